//! Membership in `Γ_{p,l}` for integer quaternions and factorization into
//! generator words.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::split_prime_powers;
use crate::complex::Presentation;
use crate::error::{Error, Result};
use crate::gensets::{parity_class, ParityClass};
use crate::quat::{reduce_canonical, GroupElement, Quaternion};
use crate::word::{Letter, Word};

/// An integer quaternion of norm `p^r l^s` with the parity pattern its norm
/// requires.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleQuaternion {
    coords: [BigInt; 4],
    r: u32,
    s: u32,
    class: ParityClass,
}

impl AdmissibleQuaternion {
    pub fn coords(&self) -> &[BigInt; 4] {
        &self.coords
    }

    /// Exponents `(r, s)` of `|x|^2 = p^r l^s`.
    pub fn exponents(&self) -> (u32, u32) {
        (self.r, self.s)
    }

    pub fn parity(&self) -> ParityClass {
        self.class
    }

    pub fn quaternion(&self) -> Quaternion {
        Quaternion::from_integers(&self.coords)
    }
}

/// Checks `|x|^2 = p^r l^s` and the parity pattern; returns the exponents.
pub fn is_admissible(x: &Quaternion, p: u64, l: u64) -> Option<AdmissibleQuaternion> {
    let coords = x.to_integers()?;
    let norm: BigInt = coords.iter().map(|c| c * c).sum();
    let (r, s) = split_prime_powers(&norm, p, l)?;
    let class = parity_class(&coords)?;
    Some(AdmissibleQuaternion {
        coords,
        r,
        s,
        class,
    })
}

fn divide_exact(w: &[BigInt; 4], q: &BigInt) -> Option<[BigInt; 4]> {
    if w.iter().all(|c| c.is_multiple_of(q)) {
        Some(w.clone().map(|c| c / q))
    } else {
        None
    }
}

fn peel(pres: &Presentation, current: &[BigInt; 4], budget: u32, out: &mut Vec<Letter>) -> bool {
    if current[1..].iter().all(Zero::is_zero) {
        return true;
    }
    if budget == 0 {
        return false;
    }
    let cur = Quaternion::from_integers(current);
    for letter in pres.letters() {
        let g = pres.lift(letter).lift();
        let q = g.norm_sq().to_integer();
        let w = (&g.conj() * &cur).to_integers().expect("integral product");
        let Some(next) = divide_exact(&w, &q) else {
            continue;
        };
        out.push(letter);
        if peel(pres, &next, budget - 1, out) {
            return true;
        }
        out.pop();
    }
    false
}

/// Factors `x` into generators by peeling left divisors of prime norm, with
/// backtracking on dead ends. The input is first reduced to its primitive
/// representative, so the word has length `r + s` for that representative.
pub fn factor_to_word(x: &AdmissibleQuaternion, pres: &Presentation) -> Result<Word> {
    let canonical = reduce_canonical(&x.quaternion())?;
    let admissible = is_admissible(&canonical.lift(), pres.p(), pres.l())
        .ok_or_else(|| Error::NotAdmissible(canonical.to_string()))?;
    let (r, s) = admissible.exponents();
    let mut letters = Vec::new();
    if !peel(pres, canonical.rep(), r + s, &mut letters) {
        return Err(Error::NoFactorization(canonical.to_string()));
    }
    Ok(pres.word(letters))
}

/// Factors the canonical lift of a group element.
pub fn factor_element(g: &GroupElement, pres: &Presentation) -> Result<Word> {
    let x = g.lift();
    let adm =
        is_admissible(&x, pres.p(), pres.l()).ok_or_else(|| Error::NotAdmissible(g.to_string()))?;
    factor_to_word(&adm, pres)
}

/// Factors an arbitrary quaternion after checking admissibility.
pub fn factor_quaternion(x: &Quaternion, pres: &Presentation) -> Result<Word> {
    let adm =
        is_admissible(x, pres.p(), pres.l()).ok_or_else(|| Error::NotAdmissible(x.to_string()))?;
    factor_to_word(&adm, pres)
}
