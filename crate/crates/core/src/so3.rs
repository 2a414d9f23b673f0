//! Exact rotation matrices: `θ(x)` is the matrix of `y ↦ x y x⁻¹` on the
//! imaginary quaternions, an element of `SO_3(Q)` with central kernel.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quat::{tau_direction, GroupElement, Quaternion};
use crate::rewrite::ExponentWord;

/// A 3×3 matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotationMatrix {
    m: [[BigRational; 3]; 3],
}

impl RotationMatrix {
    pub fn new(m: [[BigRational; 3]; 3]) -> Self {
        RotationMatrix { m }
    }

    /// Integer entries divided by a common denominator.
    pub fn from_ints(den: i64, rows: [[i64; 3]; 3]) -> Self {
        let d = BigInt::from(den);
        RotationMatrix::new(rows.map(|r| r.map(|x| BigRational::new(x.into(), d.clone()))))
    }

    pub fn identity() -> Self {
        RotationMatrix::from_ints(1, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn entries(&self) -> &[[BigRational; 3]; 3] {
        &self.m
    }

    pub fn mul(&self, other: &RotationMatrix) -> RotationMatrix {
        let e = |i: usize, j: usize| (0..3).map(|k| &self.m[i][k] * &other.m[k][j]).sum();
        RotationMatrix::new(std::array::from_fn(|i| std::array::from_fn(|j| e(i, j))))
    }

    pub fn transpose(&self) -> RotationMatrix {
        RotationMatrix::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.m[j][i].clone())
        }))
    }

    pub fn det(&self) -> BigRational {
        let m = &self.m;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn trace(&self) -> BigRational {
        &self.m[0][0] + &self.m[1][1] + &self.m[2][2]
    }

    pub fn apply(&self, v: &[BigRational; 3]) -> [BigRational; 3] {
        std::array::from_fn(|i| (0..3).map(|k| &self.m[i][k] * &v[k]).sum())
    }

    pub fn is_identity(&self) -> bool {
        *self == RotationMatrix::identity()
    }

    /// Rows as strings such as `-3/5`, for printing and JSON.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.m
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }
}

impl fmt::Display for RotationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.to_strings();
        let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, r) in rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>width$}")).collect();
            write!(f, "[ {} ]", cells.join("  "))?;
        }
        Ok(())
    }
}

impl Serialize for RotationMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// `θ(x)`, the rotation `y ↦ x y x⁻¹` of the imaginary 3-space.
pub fn theta(x: &Quaternion) -> Result<RotationMatrix> {
    if x.is_zero() {
        return Err(Error::ZeroQuaternion);
    }
    let [x0, x1, x2, x3] = x.coords();
    let n = x.norm_sq();
    let two = BigRational::from_integer(2.into());
    let sq = |a: &BigRational| a * a;
    let raw = [
        [
            sq(x0) + sq(x1) - sq(x2) - sq(x3),
            &two * (x1 * x2 - x0 * x3),
            &two * (x1 * x3 + x0 * x2),
        ],
        [
            &two * (x1 * x2 + x0 * x3),
            sq(x0) - sq(x1) + sq(x2) - sq(x3),
            &two * (x2 * x3 - x0 * x1),
        ],
        [
            &two * (x1 * x3 - x0 * x2),
            &two * (x2 * x3 + x0 * x1),
            sq(x0) - sq(x1) - sq(x2) + sq(x3),
        ],
    ];
    Ok(RotationMatrix::new(raw.map(|r| r.map(|e| e / &n))))
}

/// `θ` on the canonical lift of a group element.
pub fn eta(g: &GroupElement) -> RotationMatrix {
    theta(&g.lift()).expect("group elements are nonzero")
}

/// `MᵀM = I` and `det M = 1`, exactly.
pub fn is_special_orthogonal(m: &RotationMatrix) -> bool {
    m.transpose().mul(m).is_identity() && m.det().is_one()
}

/// Rotation data of a non-central quaternion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisAngle {
    pub axis: [BigInt; 3],
    pub cos_omega: BigRational,
    /// `cos²(ω/2) = x0² / |x|²`.
    pub cos_half_sq: BigRational,
    /// Sign of `x0`, which is the sign of `cos(ω/2)` for the axis
    /// orientation given by the imaginary part.
    pub half_sign: i8,
}

pub fn rotation_axis_angle(x: &Quaternion) -> Result<AxisAngle> {
    let axis = match tau_direction(x) {
        Ok(a) => a,
        Err(Error::RealQuaternion) if x.is_zero() => return Err(Error::ZeroQuaternion),
        Err(Error::RealQuaternion) => return Err(Error::CentralQuaternion),
        Err(e) => return Err(e),
    };
    let n = x.norm_sq();
    let x0sq = x.re() * x.re();
    let imag_sq: BigRational = x.imag().iter().map(|c| *c * *c).sum();
    let half_sign = if x.re().is_zero() {
        0
    } else if x.re().is_positive() {
        1
    } else {
        -1
    };
    Ok(AxisAngle {
        axis,
        cos_omega: (&x0sq - imag_sq) / &n,
        cos_half_sq: x0sq / n,
        half_sign,
    })
}

/// Substitutes `θ(x)`, `θ(y)` into `w` (inverses as transposes) and checks
/// that the product is exactly the identity.
pub fn relation_transfer_check(w: &ExponentWord, x: &Quaternion, y: &Quaternion) -> Result<bool> {
    let tx = theta(x)?;
    let ty = theta(y)?;
    let prod = w.evaluate(
        RotationMatrix::identity(),
        &tx,
        &ty,
        RotationMatrix::mul,
        |m| Ok::<_, Error>(m.transpose()),
    )?;
    Ok(prod.is_identity())
}
