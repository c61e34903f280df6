//! Toric data `(u, v, p)` of rank 2 equivariant reflexive sheaves.

use crate::algebra::{Exp3, LaurentPoly3};
use crate::error::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A point of `P^1` over the rationals, stored as a primitive integer pair.
///
/// The representative is normalized so that the first nonzero coordinate is
/// positive; equality of normalized pairs is equality of points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct P1Point {
    a: i64,
    b: i64,
}

impl P1Point {
    /// Normalizes `[a : b]`; fails on `[0 : 0]`.
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(Error::InvalidInput("[0:0] is not a point of P^1".into()));
        }
        let g = a.gcd(&b);
        let (mut a, mut b) = (a / g, b / g);
        if a < 0 || (a == 0 && b < 0) {
            a = -a;
            b = -b;
        }
        Ok(Self { a, b })
    }

    /// The point `[1 : k]`, handy for building pairwise distinct points.
    pub fn affine(k: i64) -> Self {
        Self { a: 1, b: k }
    }

    /// Homogeneous coordinates.
    pub fn coords(&self) -> [i64; 2] {
        [self.a, self.b]
    }
}

impl TryFrom<[i64; 2]> for P1Point {
    type Error = Error;
    fn try_from(v: [i64; 2]) -> Result<Self> {
        P1Point::new(v[0], v[1])
    }
}

impl From<P1Point> for [i64; 2] {
    fn from(p: P1Point) -> Self {
        [p.a, p.b]
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.a, self.b)
    }
}

/// A weight space of a rank 2 sheaf inside the generic fibre `C^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sub {
    /// The zero subspace.
    Zero,
    /// A line.
    Line(P1Point),
    /// All of `C^2`.
    Full,
}

impl Sub {
    /// Dimension of the subspace.
    pub fn dim(&self) -> u8 {
        match self {
            Sub::Zero => 0,
            Sub::Line(_) => 1,
            Sub::Full => 2,
        }
    }

    /// Intersection of two subspaces.
    pub fn meet(self, other: Sub) -> Sub {
        match (self, other) {
            (Sub::Zero, _) | (_, Sub::Zero) => Sub::Zero,
            (Sub::Full, x) | (x, Sub::Full) => x,
            (Sub::Line(a), Sub::Line(b)) => {
                if a == b {
                    Sub::Line(a)
                } else {
                    Sub::Zero
                }
            }
        }
    }
}

/// The flag `0 ⊂ p ⊂ C^2` of one face, jumping at `u` and `u + v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Flag {
    /// First jump.
    pub u: i32,
    /// Length of the intermediate step.
    pub v: u32,
    /// Intermediate line; present iff `v > 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<P1Point>,
}

impl Flag {
    /// Builds a flag, checking that `p` is present exactly when `v > 0`.
    pub fn new(u: i32, v: u32, p: Option<P1Point>) -> Result<Self> {
        if (v > 0) != p.is_some() {
            return Err(Error::InvalidInput(format!("flag with v={v} must {}carry a point", if v > 0 { "" } else { "not " })));
        }
        Ok(Self { u, v, p })
    }

    /// The trivial flag jumping straight to `C^2` at `u`.
    pub fn trivial(u: i32) -> Self {
        Self { u, v: 0, p: None }
    }

    /// Weight space at level `k`.
    pub fn at(&self, k: i32) -> Sub {
        if k < self.u {
            Sub::Zero
        } else if k < self.u + self.v as i32 {
            Sub::Line(self.p.expect("flag with v > 0 has a point"))
        } else {
            Sub::Full
        }
    }
}

/// Toric data of a reflexive sheaf on one chart `C^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChartToricData {
    /// Flags of the three coordinate hyperplanes, in local axis order.
    pub flags: [Flag; 3],
}

impl ChartToricData {
    /// Builds chart data from `u`, `v` and optional points.
    pub fn new(u: [i32; 3], v: [u32; 3], p: [Option<P1Point>; 3]) -> Result<Self> {
        Ok(Self { flags: [Flag::new(u[0], v[0], p[0])?, Flag::new(u[1], v[1], p[1])?, Flag::new(u[2], v[2], p[2])?] })
    }

    /// Chart data with `u = 0`, the given `v`, and pairwise distinct points.
    pub fn standard(v: [u32; 3]) -> Self {
        let p = |i: usize| if v[i] > 0 { Some(P1Point::affine(i as i64)) } else { None };
        Self::new([0, 0, 0], v, [p(0), p(1), p(2)]).expect("consistent by construction")
    }

    /// The `u` vector.
    pub fn u(&self) -> [i32; 3] {
        [self.flags[0].u, self.flags[1].u, self.flags[2].u]
    }

    /// The `v` vector.
    pub fn v(&self) -> [u32; 3] {
        [self.flags[0].v, self.flags[1].v, self.flags[2].v]
    }

    /// Weight space `R(k) = ∩_i R_i(k_i)`.
    pub fn space(&self, k: Exp3) -> Sub {
        self.flags[0].at(k[0]).meet(self.flags[1].at(k[1])).meet(self.flags[2].at(k[2]))
    }

    /// Characteristic function of the reflexive sheaf.
    pub fn chi(&self, k: Exp3) -> u8 {
        self.space(k).dim()
    }

    /// Incidence `δ_ij = dim(p_i ∩ p_j)`, zero when a point is absent.
    pub fn incidence(&self, i: usize, j: usize) -> u8 {
        match (self.flags[i].p, self.flags[j].p) {
            (Some(a), Some(b)) if a == b => 1,
            _ => 0,
        }
    }

    /// Restriction to the edge along axis `i`: the flags of the two other axes.
    pub fn edge_flags(&self, i: usize) -> [Flag; 2] {
        let (a, b) = other_axes(i);
        [self.flags[a], self.flags[b]]
    }
}

/// The two axes different from `i`, in increasing order.
pub fn other_axes(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => panic!("axis index out of range"),
    }
}

/// Whether the chart is singular, and the length of the singularity.
pub fn singularity_data(c: &ChartToricData) -> (bool, u64) {
    let v = c.v();
    let all_positive = v.iter().all(|x| *x > 0);
    let distinct = c.incidence(0, 1) == 0 && c.incidence(0, 2) == 0 && c.incidence(1, 2) == 0;
    if all_positive && distinct {
        (true, v.iter().map(|x| *x as u64).product())
    } else {
        (false, 0)
    }
}

/// The K-theory character `Σ_k (Δ_1 Δ_2 Δ_3 χ)(k) t^k` of the reflexive sheaf.
///
/// This is the numerator of its Hilbert series over `Π(1 - t_i)^{-1}`: the
/// four-term expression for singular charts and the two generators of the
/// equivariant splitting for locally free ones.
pub fn reflexive_character(c: &ChartToricData) -> LaurentPoly3 {
    let u = c.u();
    let v = c.v();
    let mut out = LaurentPoly3::zero();
    for a in u[0]..=u[0] + v[0] as i32 {
        for b in u[1]..=u[1] + v[1] as i32 {
            for d in u[2]..=u[2] + v[2] as i32 {
                let k = [a, b, d];
                let mut diff = 0i64;
                for mask in 0..8u32 {
                    let mut kk = k;
                    let mut sign = 1i64;
                    for (j, kj) in kk.iter_mut().enumerate() {
                        if mask & (1 << j) != 0 {
                            *kj -= 1;
                            sign = -sign;
                        }
                    }
                    diff += sign * c.chi(kk) as i64;
                }
                out.add_term(k, diff);
            }
        }
    }
    out
}

/// Global toric data: one flag per face (ray) of the threefold.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GlobalToricData {
    /// Flags indexed by ray.
    pub faces: Vec<Flag>,
}

impl GlobalToricData {
    /// Builds global data from per-face `u`, `v`, `p`.
    pub fn new(u: &[i32], v: &[u32], p: &[Option<P1Point>]) -> Result<Self> {
        if u.len() != v.len() || u.len() != p.len() {
            return Err(Error::InvalidInput("u, v, p must have equal length".into()));
        }
        let faces = (0..u.len()).map(|i| Flag::new(u[i], v[i], p[i])).collect::<Result<Vec<_>>>()?;
        Ok(Self { faces })
    }

    /// Restriction to the chart spanned by the given rays (in local axis order).
    pub fn chart(&self, rays: [usize; 3]) -> ChartToricData {
        ChartToricData { flags: [self.faces[rays[0]], self.faces[rays[1]], self.faces[rays[2]]] }
    }

    /// Whether the slice normalization `u = 0` holds on the given rays.
    pub fn is_sliced_at(&self, rays: [usize; 3]) -> bool {
        rays.iter().all(|r| self.faces[*r].u == 0)
    }
}

/// Chern classes `(c1, c2, c3)` on `P^3` in units of `h, h^2, h^3`.
pub fn chern_classes_p3(g: &GlobalToricData) -> Result<(i64, i64, i64)> {
    if g.faces.len() != 4 {
        return Err(Error::NotTetrahedron(g.faces.len()));
    }
    let u: Vec<i64> = g.faces.iter().map(|f| f.u as i64).collect();
    let v: Vec<i64> = g.faces.iter().map(|f| f.v as i64).collect();
    let same = |i: usize, j: usize| -> i64 {
        match (g.faces[i].p, g.faces[j].p) {
            (Some(a), Some(b)) if a == b => 1,
            _ => 0,
        }
    };
    let c1 = -(2 * u.iter().sum::<i64>() + v.iter().sum::<i64>());
    // 4 c2 = c1^2 + 2 Σ_{i<j} (1 - 2δ_ij) v_i v_j - Σ v_i^2
    let mut four_c2 = c1 * c1 - v.iter().map(|x| x * x).sum::<i64>();
    for i in 0..4 {
        for j in i + 1..4 {
            four_c2 += 2 * (1 - 2 * same(i, j)) * v[i] * v[j];
        }
    }
    if four_c2 % 4 != 0 {
        return Err(Error::InvalidInput(format!("non-integral c2 = {four_c2}/4")));
    }
    let mut c3 = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                let all = same(i, j) * same(j, k);
                c3 += v[i] * v[j] * v[k] * (1 - same(i, j) - same(i, k) - same(j, k) + 2 * all);
            }
        }
    }
    Ok((c1, four_c2 / 4, c3))
}
