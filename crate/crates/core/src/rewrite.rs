//! Words in `Γ_{p,l}`: evaluation, the two normal forms, commutation and
//! anti-torus classification, centralizer certificates and relation checks.
//!
//! Equality of elements is always decided on canonical quaternion forms.
//! The rewriting system is a second, independent route that the tests
//! compare against evaluation.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::{isqrt, legendre_symbol};
use crate::complex::{rho_v, Presentation};
use crate::error::{Error, Result};
use crate::membership::is_admissible;
use crate::quat::{commutes, is_central, tau_direction, GroupElement, Quaternion};
use crate::word::{format_letters, free_reduce, Letter, Side, Word};

/// Product of the quaternion lifts of the letters, canonically reduced.
pub fn evaluate_word(pres: &Presentation, w: &Word) -> Result<GroupElement> {
    pres.check_word(w)?;
    Ok(evaluate_letters(pres, w.letters()))
}

pub(crate) fn evaluate_letters(pres: &Presentation, letters: &[Letter]) -> GroupElement {
    letters
        .iter()
        .fold(GroupElement::identity(), |acc, &l| acc.mul(&pres.lift(l)))
}

/// Which factor comes first in a normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Order {
    /// `σ_a σ_b`: horizontal letters first.
    Ab,
    /// `σ_b' σ_a'`: vertical letters first.
    Ba,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub order: Order,
    pub sigma_a: Vec<Letter>,
    pub sigma_b: Vec<Letter>,
}

impl NormalForm {
    pub fn letters(&self) -> Vec<Letter> {
        let (first, second) = match self.order {
            Order::Ab => (&self.sigma_a, &self.sigma_b),
            Order::Ba => (&self.sigma_b, &self.sigma_a),
        };
        first.iter().chain(second).copied().collect()
    }

    pub fn len(&self) -> usize {
        self.sigma_a.len() + self.sigma_b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_word(&self, pres: &Presentation) -> Word {
        pres.word(self.letters())
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", format_letters(&self.letters()))
        }
    }
}

fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    if stack.last() == Some(&l.inv()) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

/// Rewrites `w` into `σ_a σ_b` by moving each horizontal letter left across
/// the vertical tail with `v h → h' v'` swaps, freely reducing both parts.
pub fn normalize_ab(pres: &Presentation, w: &Word) -> Result<NormalForm> {
    pres.check_word(w)?;
    let mut sa: Vec<Letter> = Vec::new();
    let mut sb: Vec<Letter> = Vec::new();
    for &x in w.letters() {
        match x.side {
            Side::V => push_reduced(&mut sb, x),
            Side::H => {
                let mut h = x;
                let mut tail = Vec::with_capacity(sb.len());
                for &v in sb.iter().rev() {
                    let (h2, v2) = pres.swap_vh(v, h);
                    tail.push(v2);
                    h = h2;
                }
                tail.reverse();
                sb = free_reduce(&tail);
                push_reduced(&mut sa, h);
            }
        }
    }
    Ok(NormalForm {
        order: Order::Ab,
        sigma_a: sa,
        sigma_b: sb,
    })
}

/// Mirror of [`normalize_ab`]: produces `σ_b' σ_a'` using `h v → v' h'`.
pub fn normalize_ba(pres: &Presentation, w: &Word) -> Result<NormalForm> {
    pres.check_word(w)?;
    let mut sb: Vec<Letter> = Vec::new();
    let mut sa: Vec<Letter> = Vec::new();
    for &x in w.letters() {
        match x.side {
            Side::H => push_reduced(&mut sa, x),
            Side::V => {
                let mut v = x;
                let mut tail = Vec::with_capacity(sa.len());
                for &h in sa.iter().rev() {
                    let (v2, h2) = pres.swap_hv(h, v);
                    tail.push(h2);
                    v = v2;
                }
                tail.reverse();
                sa = free_reduce(&tail);
                push_reduced(&mut sb, v);
            }
        }
    }
    Ok(NormalForm {
        order: Order::Ba,
        sigma_a: sa,
        sigma_b: sb,
    })
}

/// Element equality of two words, decided on canonical quaternions.
pub fn words_equal(pres: &Presentation, u: &Word, v: &Word) -> Result<bool> {
    let equal = evaluate_word(pres, u)? == evaluate_word(pres, v)?;
    debug_assert_eq!(
        equal,
        normalize_ab(pres, u)? == normalize_ab(pres, v)?,
        "normal forms disagree with evaluation"
    );
    Ok(equal)
}

/// Two elements of `Γ_{p,l}` commute iff their integer lifts commute.
pub fn commute_in_group(g: &GroupElement, h: &GroupElement) -> bool {
    commutes(&g.lift(), &h.lift())
}

/// Which free factor an element lies in, judged from the norm of its
/// canonical lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    Identity,
    Horizontal,
    Vertical,
    Mixed,
}

pub fn factor_of(p: u64, l: u64, g: &GroupElement) -> Result<Factor> {
    let adm = is_admissible(&g.lift(), p, l).ok_or_else(|| Error::NotAdmissible(g.to_string()))?;
    Ok(match adm.exponents() {
        _ if g.is_identity() => Factor::Identity,
        (_, 0) => Factor::Horizontal,
        (0, _) => Factor::Vertical,
        _ => Factor::Mixed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PairClass {
    TrivialFactor,
    ZCrossZ,
    AntiTorus,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClass::TrivialFactor => "TRIVIAL_FACTOR",
            PairClass::ZCrossZ => "Z_CROSS_Z",
            PairClass::AntiTorus => "ANTI_TORUS",
        })
    }
}

/// Classifies `⟨a, b⟩` for `a` horizontal and `b` vertical. In a
/// commutative transitive group this is `Z×Z` when they commute and an
/// anti-torus otherwise.
pub fn classify_pair(p: u64, l: u64, a: &GroupElement, b: &GroupElement) -> Result<PairClass> {
    let fa = factor_of(p, l, a)?;
    let fb = factor_of(p, l, b)?;
    if fa == Factor::Identity || fb == Factor::Identity {
        return Ok(PairClass::TrivialFactor);
    }
    if fa != Factor::Horizontal {
        return Err(Error::SideMismatch {
            expected: Side::H.name(),
        });
    }
    if fb != Factor::Vertical {
        return Err(Error::SideMismatch {
            expected: Side::V.name(),
        });
    }
    Ok(if commute_in_group(a, b) {
        PairClass::ZCrossZ
    } else {
        PairClass::AntiTorus
    })
}

/// Brute-force search for commuting powers `a^r b^s = b^s a^r` with
/// `1 ≤ r, s ≤ bound`, comparing canonical forms of the two products.
/// Returns the lexicographically least `(r, s)`.
pub fn power_commute_scan(a: &GroupElement, b: &GroupElement, bound: u32) -> Option<(u32, u32)> {
    let mut a_pow = GroupElement::identity();
    for r in 1..=bound {
        a_pow = a_pow.mul(a);
        let mut b_pow = GroupElement::identity();
        for s in 1..=bound {
            b_pow = b_pow.mul(b);
            if a_pow.mul(&b_pow) == b_pow.mul(&a_pow) {
                return Some((r, s));
            }
        }
    }
    None
}

/// `n(b) = c1² + c2² + c3²` for the primitive imaginary direction of `b`.
pub fn n_invariant(b: &GroupElement) -> Result<BigInt> {
    let c = tau_direction(&b.lift())?;
    Ok(c.iter().map(|x| x * x).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CentralizerCertificate {
    CyclicCertified,
    Inconclusive,
}

impl fmt::Display for CentralizerCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CentralizerCertificate::CyclicCertified => "CYCLIC_CERTIFIED",
            CentralizerCertificate::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Both sufficient criteria for `Z_Γ(b) = ⟨b⟩`, evaluated separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerReport {
    /// `Some(true)` if `b` is a single letter and `ρ_v(b)` has no fixed
    /// point; `None` if `b` is not a single letter.
    pub rho_fixpoint_free: Option<bool>,
    pub n_b: String,
    /// `(-n(b) / p)` and `(-n(b) / l)`.
    pub legendre_p: i8,
    pub legendre_l: i8,
    pub legendre_certifies: bool,
    pub certificate: CentralizerCertificate,
}

fn legendre_big(n: &BigInt, p: u64) -> i8 {
    let r = n
        .mod_floor(&BigInt::from(p))
        .to_i64()
        .expect("residue below p");
    legendre_symbol(r, p)
}

pub fn centralizer_is_cyclic(pres: &Presentation, b: &GroupElement) -> Result<CentralizerReport> {
    match factor_of(pres.p(), pres.l(), b)? {
        Factor::Vertical => {}
        Factor::Identity => return Err(Error::RealQuaternion),
        _ => {
            return Err(Error::SideMismatch {
                expected: Side::V.name(),
            })
        }
    }
    let rho_fixpoint_free = match pres.letter_of(b) {
        Some(letter) => {
            let perm = rho_v(pres, &pres.word(vec![letter]))?;
            Some(perm.fixed_points().is_empty())
        }
        None => None,
    };
    let n = n_invariant(b)?;
    let minus_n = -&n;
    let legendre_p = legendre_big(&minus_n, pres.p());
    let legendre_l = legendre_big(&minus_n, pres.l());
    let legendre_certifies = -legendre_p == 1 && legendre_l == 1;
    let certificate = if rho_fixpoint_free == Some(true) || legendre_certifies {
        CentralizerCertificate::CyclicCertified
    } else {
        CentralizerCertificate::Inconclusive
    };
    Ok(CentralizerReport {
        rho_fixpoint_free,
        n_b: n.to_string(),
        legendre_p,
        legendre_l,
        legendre_certifies,
        certificate,
    })
}

/// Whether `r = 0` and `s = 0` are allowed in `p^r l^s`.
///
/// The default requires `r, s ≥ 1`. Allowing zero admits trivial witnesses
/// such as `3² + 8·1² = 17` for `n = 2, p = 5, l = 17`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExponentRange {
    IncludeZero,
    #[default]
    Positive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct NormFormWitness {
    pub t: u64,
    pub u: u64,
    pub r: u32,
    pub s: u32,
}

/// Bounds for [`norm_form_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormFormBounds {
    pub t_max: u64,
    pub u_max: u64,
    /// Maximum of `r + s`.
    pub exp_max: u32,
    pub exponents: ExponentRange,
}

/// All `(t, u)` with `1 ≤ t ≤ t_max`, `1 ≤ u ≤ u_max`,
/// `gcd(t,u) = gcd(t,pl) = gcd(u,pl) = 1` and `t² + 4nu² = p^r l^s`,
/// `r + s ≤ exp_max`. Nonnegative `t, u` suffice since signs do not matter,
/// and `t = 0` or `u = 0` always fail the gcd conditions.
///
/// An empty result is bounded evidence, not a proof of nonexistence.
pub fn norm_form_search(n: u64, p: u64, l: u64, bounds: NormFormBounds) -> Vec<NormFormWitness> {
    let NormFormBounds {
        t_max,
        u_max,
        exp_max,
        exponents,
    } = bounds;
    let limit = (t_max as u128).pow(2) + 4 * n as u128 * (u_max as u128).pow(2);
    let min_exp = match exponents {
        ExponentRange::IncludeZero => 0,
        ExponentRange::Positive => 1,
    };
    let mut targets: Vec<(u128, u32, u32)> = Vec::new();
    for r in min_exp..=exp_max {
        let Some(pr) = (p as u128).checked_pow(r) else {
            break;
        };
        for s in min_exp..=exp_max.saturating_sub(r) {
            match (l as u128).checked_pow(s).and_then(|ls| pr.checked_mul(ls)) {
                Some(v) if v <= limit => targets.push((v, r, s)),
                _ => break,
            }
        }
    }
    targets.sort_unstable();
    let pl = p as u128 * l as u128;
    let mut out = Vec::new();
    for u in 1..=u_max as u128 {
        if num_integer::gcd(u, pl) != 1 {
            continue;
        }
        let four_n_u2 = 4 * n as u128 * u * u;
        for &(v, r, s) in &targets {
            if v <= four_n_u2 {
                continue;
            }
            let d = v - four_n_u2;
            let t = isqrt(d);
            if t * t != d || t == 0 || t > t_max as u128 {
                continue;
            }
            if num_integer::gcd(t, u) == 1 && num_integer::gcd(t, pl) == 1 {
                out.push(NormFormWitness {
                    t: t as u64,
                    u: u as u64,
                    r,
                    s,
                });
            }
        }
    }
    out.sort_unstable();
    out
}

/// One of the two formal symbols of a relation word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    X,
    Y,
}

/// A word such as `y x^3 y^2 x y^-1` in two formal symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentWord {
    terms: Vec<(Symbol, i64)>,
}

impl ExponentWord {
    pub fn new(terms: Vec<(Symbol, i64)>) -> Self {
        ExponentWord { terms }
    }

    pub fn terms(&self) -> &[(Symbol, i64)] {
        &self.terms
    }

    /// Number of letters `x^±1`, `y^±1`.
    pub fn len(&self) -> u64 {
        self.terms.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The commutator `x y x^-1 y^-1`.
    pub fn commutator() -> Self {
        ExponentWord::new(vec![
            (Symbol::X, 1),
            (Symbol::Y, 1),
            (Symbol::X, -1),
            (Symbol::Y, -1),
        ])
    }

    /// Substitutes values for the two symbols and multiplies left to right.
    pub fn evaluate<T, E>(
        &self,
        one: T,
        x: &T,
        y: &T,
        mul: impl Fn(&T, &T) -> T,
        inverse: impl Fn(&T) -> Result<T, E>,
    ) -> Result<T, E> {
        let x_inv = inverse(x)?;
        let y_inv = inverse(y)?;
        let mut acc = one;
        for &(sym, e) in &self.terms {
            let base = match (sym, e < 0) {
                (Symbol::X, false) => x,
                (Symbol::X, true) => &x_inv,
                (Symbol::Y, false) => y,
                (Symbol::Y, true) => &y_inv,
            };
            for _ in 0..e.unsigned_abs() {
                acc = mul(&acc, base);
            }
        }
        Ok(acc)
    }
}

impl FromStr for ExponentWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for tok in s.split_whitespace() {
            let bad = || Error::Parse(format!("malformed exponent term {tok:?}"));
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let sym = match base {
                "x" => Symbol::X,
                "y" => Symbol::Y,
                _ => return Err(bad()),
            };
            terms.push((sym, exp));
        }
        Ok(ExponentWord { terms })
    }
}

impl fmt::Display for ExponentWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(s, e)| {
                let c = if s == Symbol::X { "x" } else { "y" };
                if e == 1 {
                    c.to_string()
                } else {
                    format!("{c}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Result of substituting quaternions into a relation word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationOutcome {
    pub holds: bool,
    pub value: Quaternion,
}

/// Substitutes `x, y` (inverses taken exactly as `conj/norm`) and checks that
/// the product is a nonzero central quaternion, i.e. that the relation holds
/// in `Γ_{p,l}`.
pub fn verify_relation(
    w: &ExponentWord,
    x: &Quaternion,
    y: &Quaternion,
) -> Result<RelationOutcome> {
    let value = w.evaluate(Quaternion::one(), x, y, |a, b| a * b, Quaternion::inverse)?;
    if value.is_zero() {
        return Err(Error::ZeroProduct);
    }
    Ok(RelationOutcome {
        holds: is_central(&value),
        value,
    })
}

/// [`verify_relation`] after checking that `x` and `y` lift to `Q_{p,l}`.
pub fn verify_relation_in(
    pres: &Presentation,
    w: &ExponentWord,
    x: &Quaternion,
    y: &Quaternion,
) -> Result<RelationOutcome> {
    for q in [x, y] {
        if is_admissible(q, pres.p(), pres.l()).is_none() {
            return Err(Error::NotAdmissible(q.to_string()));
        }
    }
    verify_relation(w, x, y)
}

/// The relation of length 106 satisfied by `x = 1+2i`, `y = 1+4k`.
pub const RELATION_106: &str = "x^3 y^2 x y^-1 x^2 y^-1 x^2 y^-1 x^-4 y^-2 x^-1 y x^-2 y^-1 \
     x^-8 y^-1 x y^2 x y^-1 x^-2 y x^-1 y^-2 x^-2 y^-2 x^3 y x^-2 y^2 x^2 y^2 x y^-1 x^2 y \
     x^-1 y^-2 x^-1 y x^8 y x^2 y^-1 x y^2 x^4 y x^-2 y x^-2 y x^-1 y^-2 x^-5 y^-1 x";

/// The short relation satisfied by `x = 1+j+k`, `y = 1+2i`.
pub const RELATION_SHORT: &str = "y x^3 y^2 x y^-1 x^-3 y^-2 x^-1";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_squares;
    use crate::quat::reduce_canonical;

    fn q(s: &str) -> Quaternion {
        s.parse().unwrap()
    }

    fn g(s: &str) -> GroupElement {
        reduce_canonical(&q(s)).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let p57 = build_squares(5, 7).unwrap();
        let w = p57.parse_word("a2 a3").unwrap();
        assert_eq!(evaluate_word(&p57, &w).unwrap(), g("1+4i+2j+2k"));
        assert_eq!(
            evaluate_word(&p57, &Word::empty(p57.key())).unwrap(),
            GroupElement::identity()
        );
        let p35 = build_squares(3, 5).unwrap();
        let w = p35.parse_word("a1 a1 a1").unwrap();
        assert_eq!(evaluate_word(&p35, &w).unwrap(), g("-5+j+k"));
        assert_eq!(evaluate_word(&p35, &w.clone()), evaluate_word(&p35, &w));
        assert_eq!(evaluate_word(&p57, &w), Err(Error::AlphabetMismatch));
        let w = Word::parse(p35.key(), "a3").unwrap();
        assert_eq!(evaluate_word(&p35, &w), Err(Error::AlphabetMismatch));
    }

    #[test]
    fn single_swap() {
        let pres = build_squares(3, 5).unwrap();
        for v in pres.letters_of(Side::V) {
            for h in pres.letters_of(Side::H) {
                let w = pres.word(vec![v, h]);
                let nf = normalize_ab(&pres, &w).unwrap();
                assert_eq!(nf.sigma_a.len(), 1);
                assert_eq!(nf.sigma_b.len(), 1);
                assert_eq!(
                    evaluate_word(&pres, &nf.to_word(&pres)).unwrap(),
                    evaluate_word(&pres, &w).unwrap()
                );
            }
        }
    }

    #[test]
    fn already_normal_words_are_fixed() {
        let pres = build_squares(3, 5).unwrap();
        let ab = pres.parse_word("a1 a2 a2 b3 b1^-1").unwrap();
        assert_eq!(normalize_ab(&pres, &ab).unwrap().letters(), ab.letters());
        let ba = pres.parse_word("b3 b1^-1 a1 a2 a2").unwrap();
        assert_eq!(normalize_ba(&pres, &ba).unwrap().letters(), ba.letters());
    }

    #[test]
    fn words_equal_examples() {
        let pres = build_squares(3, 5).unwrap();
        let u = pres.parse_word("a1 b1").unwrap();
        let v = pres.parse_word("b1 a1").unwrap();
        assert!(!words_equal(&pres, &u, &v).unwrap());
        // (1+j+k)(1+2i) = 1+2i+3j-k and (1+2i)(1+j+k) = 1+2i-j+3k
        assert_eq!(q("1+j+k") * q("1+2i"), q("1+2i+3j-k"));
        assert_eq!(q("1+2i") * q("1+j+k"), q("1+2i-j+3k"));
        let nf = normalize_ab(&pres, &u).unwrap().to_word(&pres);
        assert!(words_equal(&pres, &u, &nf).unwrap());
        for r in pres.relator_words() {
            assert!(words_equal(&pres, &r, &Word::empty(pres.key())).unwrap());
        }
    }

    #[test]
    fn commutation_and_classification() {
        assert!(commute_in_group(&g("1+2i"), &g("1+4i")));
        assert!(!commute_in_group(&g("1+2i"), &g("1+4k")));
        assert!(commute_in_group(&g("3+2i+2j"), &g("3+2i+2j")));

        assert_eq!(
            classify_pair(5, 17, &g("1+2i"), &g("1+4k")).unwrap(),
            PairClass::AntiTorus
        );
        assert_eq!(
            classify_pair(5, 17, &g("1+2i"), &g("1+4i")).unwrap(),
            PairClass::ZCrossZ
        );
        assert_eq!(
            classify_pair(5, 7, &g("1+4i+2j+2k"), &g("1+2i+j+k")).unwrap(),
            PairClass::ZCrossZ
        );
        assert_eq!(
            classify_pair(5, 17, &GroupElement::identity(), &g("1+4k")).unwrap(),
            PairClass::TrivialFactor
        );
        assert!(matches!(
            classify_pair(5, 17, &g("1+4k"), &g("1+2i")),
            Err(Error::SideMismatch { .. })
        ));
        let mixed = g("1+2i").mul(&g("1+4k"));
        assert!(matches!(
            classify_pair(5, 17, &mixed, &g("1+4k")),
            Err(Error::SideMismatch { .. })
        ));
    }

    #[test]
    fn power_scan_examples() {
        assert_eq!(power_commute_scan(&g("1+2i"), &g("1+4k"), 5), None);
        assert_eq!(power_commute_scan(&g("1+2i"), &g("1+4i"), 1), Some((1, 1)));
        assert_eq!(
            power_commute_scan(&g("1+2i"), &GroupElement::identity(), 3),
            Some((1, 1))
        );
    }

    #[test]
    fn n_invariant_examples() {
        assert_eq!(n_invariant(&g("3+2i+2j")).unwrap(), BigInt::from(2));
        assert_eq!(n_invariant(&g("1+2i")).unwrap(), BigInt::from(1));
        assert_eq!(n_invariant(&g("1+2i+j+k")).unwrap(), BigInt::from(6));
        assert_eq!(
            n_invariant(&GroupElement::identity()),
            Err(Error::RealQuaternion)
        );
    }

    #[test]
    fn centralizer_examples() {
        let pres = build_squares(5, 17).unwrap();
        let rep = centralizer_is_cyclic(&pres, &g("3+2i+2j")).unwrap();
        assert_eq!(rep.rho_fixpoint_free, Some(true));
        assert_eq!(rep.n_b, "2");
        assert_eq!((rep.legendre_p, rep.legendre_l), (-1, 1));
        assert!(rep.legendre_certifies);
        assert_eq!(rep.certificate, CentralizerCertificate::CyclicCertified);

        // n(1+4k) = 1 and -1 is a square mod 5: Legendre path fails
        let rep = centralizer_is_cyclic(&pres, &g("1+4k")).unwrap();
        assert_eq!(rep.legendre_p, 1);
        assert!(!rep.legendre_certifies);
        // and 1+4k commutes with 1+2k, so rho_v(b) must have a fixed point
        assert_eq!(rep.rho_fixpoint_free, Some(false));
        assert_eq!(rep.certificate, CentralizerCertificate::Inconclusive);

        assert!(centralizer_is_cyclic(&pres, &g("1+2i")).is_err());
    }

    #[test]
    fn norm_form_examples() {
        let b = |t, u, e, exponents| NormFormBounds {
            t_max: t,
            u_max: u,
            exp_max: e,
            exponents,
        };
        let zero = ExponentRange::IncludeZero;
        let pos = ExponentRange::Positive;
        let w = norm_form_search(1, 5, 17, b(10, 10, 4, zero));
        assert!(w.contains(&NormFormWitness {
            t: 1,
            u: 1,
            r: 1,
            s: 0
        }));
        let w = norm_form_search(1, 5, 17, b(10, 10, 4, pos));
        assert!(w.contains(&NormFormWitness {
            t: 9,
            u: 1,
            r: 1,
            s: 1
        }));
        assert!(norm_form_search(3, 5, 17, b(0, 0, 4, zero)).is_empty());
        assert!(norm_form_search(2, 5, 17, b(2000, 2000, 12, pos)).is_empty());
        let w = norm_form_search(2, 5, 17, b(10, 10, 2, zero));
        assert_eq!(
            w,
            vec![
                NormFormWitness {
                    t: 1,
                    u: 6,
                    r: 0,
                    s: 2
                },
                NormFormWitness {
                    t: 3,
                    u: 1,
                    r: 0,
                    s: 1
                },
            ]
        );
    }

    #[test]
    fn norm_form_matches_brute_force() {
        // independent scan over every (t, u) in the box
        let is_target = |v: u128, p: u128, l: u128, e: u32, positive: bool| -> Option<(u32, u32)> {
            let min = positive as u32;
            for r in min..=e {
                for s in min..=(e - r) {
                    if p.pow(r) * l.pow(s) == v {
                        return Some((r, s));
                    }
                }
            }
            None
        };
        for &(n, p, l) in &[(1u64, 5u64, 13u64), (2, 3, 11), (6, 5, 7), (1, 3, 7)] {
            for positive in [false, true] {
                let bounds = NormFormBounds {
                    t_max: 150,
                    u_max: 150,
                    exp_max: 8,
                    exponents: if positive {
                        ExponentRange::Positive
                    } else {
                        ExponentRange::IncludeZero
                    },
                };
                let mut expect = Vec::new();
                for t in 0..=150u128 {
                    for u in 0..=150u128 {
                        let pl = (p * l) as u128;
                        if num_integer::gcd(t, u) != 1
                            || num_integer::gcd(t, pl) != 1
                            || num_integer::gcd(u, pl) != 1
                        {
                            continue;
                        }
                        let v = t * t + 4 * n as u128 * u * u;
                        if let Some((r, s)) = is_target(v, p as u128, l as u128, 8, positive) {
                            expect.push(NormFormWitness {
                                t: t as u64,
                                u: u as u64,
                                r,
                                s,
                            });
                        }
                    }
                }
                expect.sort();
                assert_eq!(
                    norm_form_search(n, p, l, bounds),
                    expect,
                    "n={n} p={p} l={l}"
                );
            }
        }
    }

    #[test]
    fn relations() {
        let long: ExponentWord = RELATION_106.parse().unwrap();
        assert_eq!(long.len(), 106);
        assert!(
            verify_relation(&long, &q("1+2i"), &q("1+4k"))
                .unwrap()
                .holds
        );
        let short: ExponentWord = RELATION_SHORT.parse().unwrap();
        let out = verify_relation(&short, &q("1+j+k"), &q("1+2i")).unwrap();
        assert!(out.holds);
        assert_eq!(out.value, Quaternion::one());
        let comm = ExponentWord::commutator();
        assert!(
            !verify_relation(&comm, &q("1+2i"), &q("1+4k"))
                .unwrap()
                .holds
        );
        assert_eq!(short.to_string(), RELATION_SHORT);
        assert!("x z".parse::<ExponentWord>().is_err());

        let pres = build_squares(5, 17).unwrap();
        assert!(
            verify_relation_in(&pres, &long, &q("1+2i"), &q("1+4k"))
                .unwrap()
                .holds
        );
        assert!(verify_relation_in(&pres, &long, &q("1+i"), &q("1+4k")).is_err());
    }
}
