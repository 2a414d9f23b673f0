//! The generator sets `X_q`: integer quaternions of odd prime norm `q` with
//! the parity pattern fixed by `q mod 4`, and their letter labels.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::arith::{check_odd_prime, isqrt};
use crate::error::{Error, Result};
use crate::quat::{reduce_canonical, GroupElement, Quaternion};

/// Which of the two admissible parity patterns an integer quaternion has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ParityClass {
    /// Norm ≡ 1 (mod 4): `x0` odd, `x1, x2, x3` even.
    OneModFour,
    /// Norm ≡ 3 (mod 4): `x1` even, `x0, x2, x3` odd.
    ThreeModFour,
}

impl ParityClass {
    pub fn label(self) -> &'static str {
        match self {
            ParityClass::OneModFour => "1 mod 4",
            ParityClass::ThreeModFour => "3 mod 4",
        }
    }
}

/// The parity class matching `|x|^2 mod 4`, or `None` if the norm is even or
/// the coordinates do not follow the pattern for their residue.
pub fn parity_class(x: &[BigInt; 4]) -> Option<ParityClass> {
    let norm: BigInt = x.iter().map(|c| c * c).sum();
    let odd: Vec<bool> = x.iter().map(Integer::is_odd).collect();
    match (norm % 4u32).try_into().ok()? {
        1u32 if odd == [true, false, false, false] => Some(ParityClass::OneModFour),
        3u32 if odd == [true, false, true, true] => Some(ParityClass::ThreeModFour),
        _ => None,
    }
}

fn satisfies(x: [i64; 4], q: u64) -> bool {
    let odd = x.map(|c| c.rem_euclid(2) == 1);
    if q % 4 == 1 {
        odd == [true, false, false, false]
    } else {
        odd == [true, false, true, true]
    }
}

/// All `2(q+1)` elements of `X_q`, by exhaustive scan over `|x_i| ≤ ⌊√q⌋`,
/// in lexicographic order of coordinates.
pub fn enumerate_xq(q: u64) -> Result<Vec<[i64; 4]>> {
    check_odd_prime(q)?;
    let b = isqrt(q as u128) as i64;
    let q = q as i64;
    let mut out = Vec::new();
    for x0 in -b..=b {
        for x1 in -b..=b {
            for x2 in -b..=b {
                let partial = x0 * x0 + x1 * x1 + x2 * x2;
                if partial > q {
                    continue;
                }
                for x3 in -b..=b {
                    let x = [x0, x1, x2, x3];
                    if partial + x3 * x3 == q && satisfies(x, q as u64) {
                        out.push(x);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `X_q` together with its `(q+1)/2` letter labels.
///
/// Each label stands for an inverse pair `{g, conj g}` of canonical forms.
/// The lexicographically larger member of the pair is the letter itself, and
/// letters are numbered in decreasing lexicographic order of those members,
/// so `X_5` yields `1+2i, 1+2j, 1+2k` and `X_3` yields `1+j+k, 1+j-k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    q: u64,
    elements: Vec<[i64; 4]>,
    labels: Vec<GroupElement>,
    inverses: Vec<GroupElement>,
}

impl GeneratorSet {
    pub fn new(q: u64) -> Result<Self> {
        let elements = enumerate_xq(q)?;
        Ok(build_generator_labels(q, elements))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn elements(&self) -> &[[i64; 4]] {
        &self.elements
    }

    pub fn element_quaternions(&self) -> impl Iterator<Item = Quaternion> + '_ {
        self.elements
            .iter()
            .map(|&[a, b, c, d]| Quaternion::from_ints(a, b, c, d))
    }

    /// Number of letters `(q+1)/2`.
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// Canonical forms of the positive letters, in label order.
    pub fn labels(&self) -> &[GroupElement] {
        &self.labels
    }

    /// Canonical form of letter `index`, inverted if requested.
    pub fn element(&self, index: u16, inverse: bool) -> &GroupElement {
        if inverse {
            &self.inverses[index as usize]
        } else {
            &self.labels[index as usize]
        }
    }

    /// Resolves a canonical element of `ψ(X_q)` to `(index, inverse)`.
    pub fn lookup_letter(&self, e: &GroupElement) -> Result<(u16, bool)> {
        for (i, (g, g_inv)) in self.labels.iter().zip(&self.inverses).enumerate() {
            if g == e {
                return Ok((i as u16, false));
            }
            if g_inv == e {
                return Ok((i as u16, true));
            }
        }
        Err(Error::NotAGenerator(e.to_string()))
    }
}

pub fn build_generator_labels(q: u64, elements: Vec<[i64; 4]>) -> GeneratorSet {
    let canonical: BTreeSet<GroupElement> = elements
        .iter()
        .map(|&[a, b, c, d]| {
            reduce_canonical(&Quaternion::from_ints(a, b, c, d)).expect("norm q is nonzero")
        })
        .collect();
    let mut labels: Vec<GroupElement> = canonical
        .iter()
        .filter(|g| g.inverse() < **g)
        .cloned()
        .collect();
    labels.reverse();
    let inverses = labels.iter().map(GroupElement::inverse).collect();
    GeneratorSet {
        q,
        elements,
        labels,
        inverses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(x: [i64; 4]) -> [BigInt; 4] {
        x.map(BigInt::from)
    }

    #[test]
    fn jacobi_counts_below_100() {
        for q in (3..100).filter(|&q| crate::arith::is_prime(q)) {
            assert_eq!(
                enumerate_xq(q).unwrap().len() as u64,
                2 * (q + 1),
                "q = {q}"
            );
        }
    }

    #[test]
    fn x5_and_x17() {
        let x5 = enumerate_xq(5).unwrap();
        assert_eq!(x5.len(), 12);
        for s0 in [-1, 1] {
            for s1 in [-2, 2] {
                assert!(x5.contains(&[s0, s1, 0, 0]));
                assert!(x5.contains(&[s0, 0, s1, 0]));
                assert!(x5.contains(&[s0, 0, 0, s1]));
            }
        }
        let x17 = enumerate_xq(17).unwrap();
        assert_eq!(x17.len(), 36);
        assert!(x17.contains(&[1, 0, 0, 4]));
        assert!(x17.contains(&[3, 2, 2, 0]));
    }

    #[test]
    fn x3_is_the_eight_units_times_one_plus_j_plus_k() {
        // brute force over |x_i| <= 1 with the 3 mod 4 pattern
        let mut expected = Vec::new();
        for x in all_small_vectors() {
            let norm: i64 = x.iter().map(|c| c * c).sum();
            if norm == 3 && x[1] % 2 == 0 && x[0] % 2 != 0 && x[2] % 2 != 0 && x[3] % 2 != 0 {
                expected.push(x);
            }
        }
        assert_eq!(expected.len(), 8);
        assert_eq!(enumerate_xq(3).unwrap(), expected);
        assert!(expected.iter().all(|x| x[1] == 0));
    }

    fn all_small_vectors() -> Vec<[i64; 4]> {
        let r = -1..=1;
        let mut v = Vec::new();
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        v.push([a, b, c, d]);
                    }
                }
            }
        }
        v
    }

    #[test]
    fn parity_classes() {
        assert_eq!(
            parity_class(&ints([1, 2, 0, 0])),
            Some(ParityClass::OneModFour)
        );
        assert_eq!(
            parity_class(&ints([1, 0, 1, 1])),
            Some(ParityClass::ThreeModFour)
        );
        assert_eq!(parity_class(&ints([1, 1, 0, 0])), None);
        // norm 5 but wrong pattern
        assert_eq!(parity_class(&ints([2, 1, 0, 0])), None);
    }

    #[test]
    fn not_odd_prime() {
        assert_eq!(enumerate_xq(9), Err(Error::NotOddPrime(9)));
        assert_eq!(enumerate_xq(2), Err(Error::NotOddPrime(2)));
    }

    #[test]
    fn labels_match_the_usual_names() {
        let g5 = GeneratorSet::new(5).unwrap();
        let names: Vec<String> = g5.labels().iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["1+2i", "1+2j", "1+2k"]);
        let g3 = GeneratorSet::new(3).unwrap();
        let names: Vec<String> = g3.labels().iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["1+j+k", "1+j-k"]);
    }

    #[test]
    fn lookup() {
        let g5 = GeneratorSet::new(5).unwrap();
        let c = |s: &str| reduce_canonical(&s.parse().unwrap()).unwrap();
        assert_eq!(g5.lookup_letter(&c("1-2i")).unwrap(), (0, true));
        assert_eq!(g5.lookup_letter(&c("1+2i")).unwrap(), (0, false));
        assert_eq!(g5.lookup_letter(&c("-1+2i")).unwrap(), (0, true));
        assert!(matches!(
            g5.lookup_letter(&c("1+i")),
            Err(Error::NotAGenerator(_))
        ));
        assert_eq!(g5.element(0, true), &c("1-2i"));
    }

    #[test]
    fn inverse_closure_and_bijection() {
        for q in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            let gs = GeneratorSet::new(q).unwrap();
            assert_eq!(gs.rank() as u64, (q + 1) / 2);
            for &[a, b, c, d] in gs.elements() {
                assert!(gs.elements().contains(&[a, -b, -c, -d]));
                assert!(gs.elements().contains(&[-a, -b, -c, -d]));
            }
            let canonical: BTreeSet<GroupElement> = gs
                .element_quaternions()
                .map(|x| reduce_canonical(&x).unwrap())
                .collect();
            assert_eq!(canonical.len() as u64, q + 1);
            let mut hit = BTreeSet::new();
            for e in &canonical {
                let (i, inv) = gs.lookup_letter(e).unwrap();
                assert_eq!(gs.element(i, inv), e);
                assert!(hit.insert((i, inv)));
                // no element is its own inverse
                assert_ne!(&e.inverse(), e);
            }
        }
    }
}
