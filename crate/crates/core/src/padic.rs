//! Truncated `p`-adic model of the embedding into `PGL_2(Q_p)`: a solution
//! of `c² + d² + 1 ≡ 0 (mod p^k)` and the resulting 2×2 matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::check_odd_prime;
use crate::error::{Error, Result};
use crate::quat::Quaternion;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicParams {
    pub p: u64,
    pub k: u32,
    pub modulus: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl PadicParams {
    /// `c² + d² + 1 mod p^k`; zero for valid parameters.
    pub fn residual(&self) -> BigInt {
        (&self.c * &self.c + &self.d * &self.d + 1u32).mod_floor(&self.modulus)
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Finds `(c, d)` mod `p` by search, preferring `d = 0` when `p ≡ 1 mod 4`,
/// then Newton-lifts the coordinate with a unit derivative (`c` if
/// possible) to precision `p^k`.
pub fn solve_cd(p: u64, k: u32) -> Result<PadicParams> {
    check_odd_prime(p)?;
    if k == 0 {
        return Err(Error::ZeroPrecision);
    }
    let pb = p as u128;
    let target = |c: u128, d: u128| (c * c + d * d + 1).is_multiple_of(pb);
    let base = if p % 4 == 1 {
        (0..pb).find(|&c| target(c, 0)).map(|c| (c, 0))
    } else {
        None
    }
    .or_else(|| {
        (0..pb)
            .flat_map(|c| (0..pb).map(move |d| (c, d)))
            .find(|&(c, d)| target(c, d))
    })
    .expect("c² + d² + 1 ≡ 0 is solvable modulo every odd prime");

    let modulus = BigInt::from(p).pow(k);
    let mut c = BigInt::from(base.0);
    let mut d = BigInt::from(base.1);
    let lift_c = base.0 != 0;
    loop {
        let f = (&c * &c + &d * &d + 1u32).mod_floor(&modulus);
        if f.is_zero() {
            break;
        }
        let x = if lift_c { &mut c } else { &mut d };
        let deriv = (&*x * 2u32).mod_floor(&modulus);
        let inv = mod_inverse(&deriv, &modulus).expect("derivative is a unit");
        *x = (&*x - f * inv).mod_floor(&modulus);
    }
    Ok(PadicParams {
        p,
        k,
        modulus,
        c,
        d,
    })
}

/// A 2×2 matrix with entries reduced modulo a fixed modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModMatrix {
    #[serde(serialize_with = "ser_entries")]
    pub entries: [[BigInt; 2]; 2],
    #[serde(serialize_with = "ser_big")]
    pub modulus: BigInt,
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_entries<S: serde::Serializer>(v: &[[BigInt; 2]; 2], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = v
        .iter()
        .map(|r| r.iter().map(BigInt::to_string).collect())
        .collect();
    serde::Serialize::serialize(&rows, s)
}

impl ModMatrix {
    pub fn new(entries: [[BigInt; 2]; 2], modulus: BigInt) -> Self {
        let entries = entries.map(|r| r.map(|e| e.mod_floor(&modulus)));
        ModMatrix { entries, modulus }
    }

    pub fn identity(modulus: BigInt) -> Self {
        let o = || BigInt::one();
        let z = BigInt::zero;
        ModMatrix::new([[o(), z()], [z(), o()]], modulus)
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.modulus, other.modulus);
        let a = &self.entries;
        let b = &other.entries;
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        ModMatrix::new(
            [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
            self.modulus.clone(),
        )
    }

    pub fn det(&self) -> BigInt {
        let a = &self.entries;
        (&a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]).mod_floor(&self.modulus)
    }

    pub fn is_scalar(&self) -> bool {
        let a = &self.entries;
        a[0][1].is_zero() && a[1][0].is_zero() && a[0][0] == a[1][1]
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.entries;
        write!(
            f,
            "[[{}, {}], [{}, {}]] mod {}",
            a[0][0], a[0][1], a[1][0], a[1][1], self.modulus
        )
    }
}

/// The image of an integer quaternion in `M_2(Z/p^k)`.
pub fn psi_matrix_mod_pk(x: &Quaternion, params: &PadicParams) -> Result<ModMatrix> {
    let [x0, x1, x2, x3] = x
        .to_integers()
        .ok_or_else(|| Error::NotIntegral(x.to_string()))?;
    let (c, d) = (&params.c, &params.d);
    Ok(ModMatrix::new(
        [
            [&x0 + &x1 * c + &x3 * d, -(&x1 * d) + &x2 + &x3 * c],
            [-(&x1 * d) - &x2 + &x3 * c, &x0 - &x1 * c - &x3 * d],
        ],
        params.modulus.clone(),
    ))
}
