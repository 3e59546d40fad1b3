//! Non-leaping sequences, clique-path shorthand, and neighborhood sequences.
//!
//! A non-leaping sequence `q_1, ..., q_n` fixes the size of every backward
//! neighborhood; a neighborhood sequence picks the one free vertex (the
//! *anchor* `a_k`) of each backward neighborhood. Vertex labels are 1-based
//! throughout this module.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("sequence has length {0}, at least 2 is required")]
    LengthTooShort(usize),
    #[error("sequence must start with 0, 1")]
    HeadMismatch,
    #[error("leap violation at index {index}: q_{index} = {value}")]
    LeapViolation { index: usize, value: usize },
    #[error("clique-path part {index} is {value}, parts must be at least 3")]
    PartTooSmall { index: usize, value: usize },
    #[error("index {k} is out of range for a sequence of length {n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("expected {expected} anchors (a_3..a_n), got {got}")]
    AnchorCount { expected: usize, got: usize },
    #[error("anchor a_{k} = {value} is not admissible")]
    InvalidAnchor { k: usize, value: usize },
    #[error("cannot parse sequence literal: {0}")]
    Parse(String),
}

/// A validated non-leaping sequence with its derived `b_k = k - q_k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct NonLeapingSequence {
    q: Vec<usize>,
    b: Vec<usize>,
}

impl NonLeapingSequence {
    pub fn new(q: Vec<usize>) -> Result<Self, SequenceError> {
        validate_nonleaping(&q)
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `q_k`, 1-based.
    pub fn q(&self, k: usize) -> usize {
        self.q[k - 1]
    }

    /// `b_k`, 1-based. `b_1` and `b_2` both evaluate to 2.
    pub fn b(&self, k: usize) -> usize {
        self.b[k - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.q
    }

    /// The `b_k` values for `k = 1..=n`.
    pub fn b_values(&self) -> &[usize] {
        &self.b
    }

    /// Number of admissible anchors at index `k >= 3`. This does not depend
    /// on earlier anchor choices: `a_{k-1}` is always admissible and the rest
    /// is the interval `[b_{k-1}, min(k-2, b_k-1)]`.
    pub fn anchor_choices(&self, k: usize) -> usize {
        if k == 3 {
            return 1;
        }
        let lo = self.b(k - 1);
        let hi = (k - 2).min(self.b(k) - 1);
        1 + (hi + 1).saturating_sub(lo)
    }
}

impl TryFrom<Vec<usize>> for NonLeapingSequence {
    type Error = SequenceError;

    fn try_from(q: Vec<usize>) -> Result<Self, Self::Error> {
        validate_nonleaping(&q)
    }
}

impl From<NonLeapingSequence> for Vec<usize> {
    fn from(s: NonLeapingSequence) -> Self {
        s.q
    }
}

impl fmt::Display for NonLeapingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.q.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Accepts either a plain list (`0,1,2,2`) or clique-path shorthand
/// (`2:3,4,3`). Whitespace is ignored.
impl FromStr for NonLeapingSequence {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.starts_with("2:") {
            return compact.parse::<CliquePathSpec>()?.expand();
        }
        validate_nonleaping(&parse_list(&compact)?)
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>, SequenceError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| SequenceError::Parse(format!("bad integer {tok:?}")))
        })
        .collect()
}

pub fn validate_nonleaping(q: &[usize]) -> Result<NonLeapingSequence, SequenceError> {
    if q.len() < 2 {
        return Err(SequenceError::LengthTooShort(q.len()));
    }
    if q[0] != 0 || q[1] != 1 {
        return Err(SequenceError::HeadMismatch);
    }
    for k in 3..=q.len() {
        let value = q[k - 1];
        if value < 2 || value > q[k - 2] + 1 {
            return Err(SequenceError::LeapViolation { index: k, value });
        }
    }
    let b = q.iter().enumerate().map(|(i, &qk)| i + 2 - qk).collect();
    Ok(NonLeapingSequence { q: q.to_vec(), b })
}

/// The clique sizes `p_1, ..., p_m` of a 2-clique path, written `2:p_1,...,p_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct CliquePathSpec {
    parts: Vec<usize>,
}

impl CliquePathSpec {
    pub fn new(parts: Vec<usize>) -> Result<Self, SequenceError> {
        if let Some((i, &p)) = parts.iter().enumerate().find(|(_, &p)| p < 3) {
            return Err(SequenceError::PartTooSmall { index: i + 1, value: p });
        }
        Ok(Self { parts })
    }

    /// The `m` copies of 3, i.e. the linear 2-trees on `m + 2` vertices.
    pub fn linear_2tree(m: usize) -> Self {
        Self { parts: vec![3; m] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn vertex_count(&self) -> usize {
        2 + self.parts.iter().map(|p| p - 2).sum::<usize>()
    }

    pub fn expand(&self) -> Result<NonLeapingSequence, SequenceError> {
        expand_clique_path_spec(self)
    }
}

impl TryFrom<Vec<usize>> for CliquePathSpec {
    type Error = SequenceError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        CliquePathSpec::new(parts)
    }
}

impl From<CliquePathSpec> for Vec<usize> {
    fn from(spec: CliquePathSpec) -> Self {
        spec.parts
    }
}

impl fmt::Display for CliquePathSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "2:{}", parts.join(","))
    }
}

impl FromStr for CliquePathSpec {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("2:")
            .ok_or_else(|| SequenceError::Parse(format!("{s:?} does not start with \"2:\"")))?;
        CliquePathSpec::new(parse_list(body)?)
    }
}

pub fn expand_clique_path_spec(spec: &CliquePathSpec) -> Result<NonLeapingSequence, SequenceError> {
    let mut q = vec![0, 1];
    for (i, &p) in spec.parts.iter().enumerate() {
        if p < 3 {
            return Err(SequenceError::PartTooSmall { index: i + 1, value: p });
        }
        q.extend(2..p);
    }
    validate_nonleaping(&q)
}

/// A member of `CP(s)`, identified by its anchors `a_3, ..., a_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawNeighborhood")]
pub struct NeighborhoodSequence {
    base: NonLeapingSequence,
    anchors: Vec<usize>,
}

impl NeighborhoodSequence {
    /// Validates `anchors` (for `k = 3..=n`) against `base`.
    pub fn new(base: NonLeapingSequence, anchors: Vec<usize>) -> Result<Self, SequenceError> {
        let n = base.len();
        let expected = n.saturating_sub(2);
        if anchors.len() != expected {
            return Err(SequenceError::AnchorCount {
                expected,
                got: anchors.len(),
            });
        }
        for k in 3..=n {
            let admissible = admissible_anchors(&base, k, &anchors[..k - 3])?;
            let value = anchors[k - 3];
            if !admissible.contains(&value) {
                return Err(SequenceError::InvalidAnchor { k, value });
            }
        }
        Ok(Self { base, anchors })
    }

    /// The member whose anchors are all the smallest admissible choice.
    pub fn first(base: NonLeapingSequence) -> Self {
        enumerate_neighborhood_sequences(&base)
            .next()
            .expect("every non-leaping sequence has at least one member")
    }

    pub fn base(&self) -> &NonLeapingSequence {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    /// `a_k` for `k >= 2` (`a_2 = 1`).
    pub fn anchor(&self, k: usize) -> usize {
        anchor_at(&self.anchors, k)
    }

    /// The backward neighborhood `W_k`, ascending.
    pub fn neighborhood(&self, k: usize) -> Vec<usize> {
        neighborhood_from(&self.base, &self.anchors, k)
    }
}

#[derive(Deserialize)]
struct RawNeighborhood {
    base: NonLeapingSequence,
    anchors: Vec<usize>,
}

impl TryFrom<RawNeighborhood> for NeighborhoodSequence {
    type Error = SequenceError;

    fn try_from(raw: RawNeighborhood) -> Result<Self, Self::Error> {
        NeighborhoodSequence::new(raw.base, raw.anchors)
    }
}

fn anchor_at(anchors: &[usize], k: usize) -> usize {
    if k <= 2 {
        1
    } else {
        anchors[k - 3]
    }
}

/// `W_k` from anchors `a_3..a_k` (only the first `k - 2` entries are read).
fn neighborhood_from(base: &NonLeapingSequence, anchors: &[usize], k: usize) -> Vec<usize> {
    match k {
        1 => Vec::new(),
        2 => vec![1],
        _ => {
            let mut w = vec![anchor_at(anchors, k)];
            w.extend(base.b(k)..k);
            w
        }
    }
}

/// `{x in W_{k-1} : x < b_k}` given anchors `a_3..a_{k-1}`.
pub fn admissible_anchors(
    base: &NonLeapingSequence,
    k: usize,
    prior_anchors: &[usize],
) -> Result<Vec<usize>, SequenceError> {
    let n = base.len();
    if k < 3 || k > n || prior_anchors.len() < k - 3 {
        return Err(SequenceError::IndexOutOfRange { k, n });
    }
    let bound = base.b(k);
    Ok(neighborhood_from(base, prior_anchors, k - 1)
        .into_iter()
        .filter(|&x| x < bound)
        .collect())
}

/// Lexicographic depth-first enumeration of every member of `CP(base)`.
pub fn enumerate_neighborhood_sequences(base: &NonLeapingSequence) -> NeighborhoodSequences {
    NeighborhoodSequences::new(base.clone())
}

pub fn count_neighborhood_sequences(base: &NonLeapingSequence) -> BigUint {
    (3..=base.len()).fold(BigUint::one(), |acc, k| acc * base.anchor_choices(k))
}

/// Iterator over anchor vectors in ascending lexicographic order.
#[derive(Debug, Clone)]
pub struct NeighborhoodSequences {
    base: NonLeapingSequence,
    // choices[i] holds the admissible anchors for k = i + 3; cursor[i] the current pick.
    choices: Vec<Vec<usize>>,
    cursor: Vec<usize>,
    done: bool,
}

impl NeighborhoodSequences {
    fn new(base: NonLeapingSequence) -> Self {
        let mut it = Self {
            base,
            choices: Vec::new(),
            cursor: Vec::new(),
            done: false,
        };
        it.descend();
        it
    }

    fn current(&self) -> Vec<usize> {
        self.choices
            .iter()
            .zip(&self.cursor)
            .map(|(c, &i)| c[i])
            .collect()
    }

    /// Extends the current prefix with first choices down to full length.
    fn descend(&mut self) {
        let n = self.base.len();
        while self.cursor.len() + 3 <= n {
            let k = self.cursor.len() + 3;
            let prefix = self.current();
            let opts = admissible_anchors(&self.base, k, &prefix)
                .expect("index within range during enumeration");
            self.choices.push(opts);
            self.cursor.push(0);
        }
    }

    /// Advances to the next anchor vector; returns false when exhausted.
    fn advance(&mut self) -> bool {
        while let Some(last) = self.cursor.last_mut() {
            *last += 1;
            if *last < self.choices[self.cursor.len() - 1].len() {
                self.descend();
                return true;
            }
            self.cursor.pop();
            self.choices.pop();
        }
        false
    }
}

impl Iterator for NeighborhoodSequences {
    type Item = NeighborhoodSequence;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = NeighborhoodSequence {
            base: self.base.clone(),
            anchors: self.current(),
        };
        if !self.advance() {
            self.done = true;
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(q: &[usize]) -> NonLeapingSequence {
        validate_nonleaping(q).unwrap()
    }

    #[test]
    fn b_values_of_example_sequence() {
        let s = seq(&[0, 1, 2, 2, 2, 2, 3, 3]);
        let b: Vec<usize> = (2..=8).map(|k| s.b(k)).collect();
        assert_eq!(b, vec![2, 2, 3, 4, 5, 5, 6]);
    }

    #[test]
    fn validation_errors() {
        assert!(validate_nonleaping(&[0, 1]).is_ok());
        assert_eq!(validate_nonleaping(&[0]), Err(SequenceError::LengthTooShort(1)));
        assert_eq!(validate_nonleaping(&[1, 1]), Err(SequenceError::HeadMismatch));
        assert_eq!(validate_nonleaping(&[0, 2]), Err(SequenceError::HeadMismatch));
        assert_eq!(
            validate_nonleaping(&[0, 1, 3]),
            Err(SequenceError::LeapViolation { index: 3, value: 3 })
        );
        assert_eq!(
            validate_nonleaping(&[0, 1, 2, 1]),
            Err(SequenceError::LeapViolation { index: 4, value: 1 })
        );
        assert_eq!(
            validate_nonleaping(&[0, 1, 2, 3, 5]),
            Err(SequenceError::LeapViolation { index: 5, value: 5 })
        );
    }

    #[test]
    fn clique_path_expansion() {
        let s: NonLeapingSequence = "2:3,4,3,4".parse().unwrap();
        assert_eq!(s.as_slice(), &[0, 1, 2, 2, 3, 2, 2, 3]);
        let s: NonLeapingSequence = "2:".parse().unwrap();
        assert_eq!(s.as_slice(), &[0, 1]);
        let s: NonLeapingSequence = "2:3".parse().unwrap();
        assert_eq!(s.as_slice(), &[0, 1, 2]);
        assert_eq!(
            CliquePathSpec::new(vec![3, 2]),
            Err(SequenceError::PartTooSmall { index: 2, value: 2 })
        );
        assert_eq!(CliquePathSpec::new(vec![4, 5]).unwrap().vertex_count(), 7);
    }

    #[test]
    fn literal_parsing_ignores_whitespace() {
        let s: NonLeapingSequence = " 0, 1,2 ,\t2 ".parse().unwrap();
        assert_eq!(s.as_slice(), &[0, 1, 2, 2]);
        assert!(matches!("0,1,x".parse::<NonLeapingSequence>(), Err(SequenceError::Parse(_))));
        assert_eq!(s.to_string(), "0,1,2,2");
        assert_eq!(CliquePathSpec::new(vec![3, 4]).unwrap().to_string(), "2:3,4");
    }

    #[test]
    fn admissible_anchor_examples() {
        let s = seq(&[0, 1, 2, 2, 2, 2, 3, 3]);
        assert_eq!(admissible_anchors(&s, 3, &[]).unwrap(), vec![1]);
        // G_1: W_6 = {4,5}
        assert_eq!(admissible_anchors(&s, 7, &[1, 2, 3, 4]).unwrap(), vec![4]);
        // G_2: W_7 = {1,5,6}
        assert_eq!(admissible_anchors(&s, 8, &[1, 1, 1, 1, 1]).unwrap(), vec![1, 5]);
        assert!(matches!(
            admissible_anchors(&s, 9, &[1, 1, 1, 1, 1, 1]),
            Err(SequenceError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            admissible_anchors(&s, 2, &[]),
            Err(SequenceError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn neighborhoods_of_g1_and_g2() {
        let s = seq(&[0, 1, 2, 2, 2, 2, 3, 3]);
        let g1 = NeighborhoodSequence::new(s.clone(), vec![1, 2, 3, 4, 4, 5]).unwrap();
        let g2 = NeighborhoodSequence::new(s.clone(), vec![1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(g1.neighborhood(7), vec![4, 5, 6]);
        assert_eq!(g1.neighborhood(8), vec![5, 6, 7]);
        assert_eq!(g2.neighborhood(7), vec![1, 5, 6]);
        assert_eq!(g2.neighborhood(8), vec![1, 6, 7]);
        assert_eq!(g1.neighborhood(1), Vec::<usize>::new());
        assert_eq!(g1.neighborhood(2), vec![1]);
        assert_eq!(
            NeighborhoodSequence::new(s.clone(), vec![1, 2, 3, 4, 5, 5]),
            Err(SequenceError::InvalidAnchor { k: 7, value: 5 })
        );
        assert!(matches!(
            NeighborhoodSequence::new(s, vec![1]),
            Err(SequenceError::AnchorCount { expected: 6, got: 1 })
        ));
    }

    #[test]
    fn enumeration_examples() {
        let all: Vec<_> = enumerate_neighborhood_sequences(&seq(&[0, 1, 2])).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].anchors(), &[1]);

        let single: Vec<_> = enumerate_neighborhood_sequences(&seq(&[0, 1])).collect();
        assert_eq!(single.len(), 1);
        assert!(single[0].anchors().is_empty());

        let s = seq(&[0, 1, 2, 2, 2, 2, 3, 3]);
        let all: Vec<Vec<usize>> = enumerate_neighborhood_sequences(&s)
            .map(|ns| ns.anchors().to_vec())
            .collect();
        assert_eq!(all.len(), 16);
        assert!(all.contains(&vec![1, 2, 3, 4, 4, 5]));
        assert!(all.contains(&vec![1, 1, 1, 1, 1, 1]));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(enumerate_neighborhood_sequences(&s).take(5).count(), 5);
    }

    /// Independent depth-first expansion used as the counting oracle.
    fn brute_force_count(base: &NonLeapingSequence, prefix: &mut Vec<usize>) -> usize {
        let k = prefix.len() + 3;
        if k > base.len() {
            return 1;
        }
        let opts = admissible_anchors(base, k, prefix).unwrap();
        let mut total = 0;
        for a in opts {
            prefix.push(a);
            total += brute_force_count(base, prefix);
            prefix.pop();
        }
        total
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_neighborhood_sequences(&seq(&[0, 1, 2])), BigUint::from(1u32));
        for q in [&[0, 1, 2, 2][..], &[0, 1, 2, 2, 2, 2, 3, 3]] {
            let s = seq(q);
            let oracle = brute_force_count(&s, &mut Vec::new());
            assert_eq!(count_neighborhood_sequences(&s), BigUint::from(oracle));
        }
        assert_eq!(count_neighborhood_sequences(&seq(&[0, 1, 2, 2])), BigUint::from(2u32));
        assert_eq!(
            count_neighborhood_sequences(&seq(&[0, 1, 2, 2, 2, 2, 3, 3])),
            BigUint::from(16u32)
        );
    }

    #[test]
    fn serde_round_trip_validates() {
        let s = seq(&[0, 1, 2, 3]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[0,1,2,3]");
        let back: NonLeapingSequence = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<NonLeapingSequence>("[0,1,3]").is_err());
    }
}
