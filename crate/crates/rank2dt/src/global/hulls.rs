//! Classified torus equivariant stable reflexive hulls on projective space.

use crate::error::{Error, Result};
use crate::toric::{chern_classes_p3, mu_stable, GlobalToricData, P1Point, ToricThreefold};
use serde::{Deserialize, Serialize};

/// A reflexive hull together with its Chern classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hull {
    /// Family label: `"c2=1"` for the minimal case, `"i"`, `"ii"`, `"iii"` for `c_2 = 2`.
    pub kind: String,
    /// Toric data per face.
    pub data: GlobalToricData,
    /// `c_2` of the hull.
    pub c2: i64,
    /// `c_3` of the hull.
    pub c3: i64,
}

fn pt(k: i64) -> Option<P1Point> {
    Some(P1Point::affine(k))
}

/// Hulls with `v = 0` on face `i`, `v = 1` elsewhere and distinct points.
fn minimal_hulls() -> Vec<GlobalToricData> {
    (0..4)
        .map(|i| {
            let mut v = [1u32; 4];
            let mut p = [None; 4];
            v[i] = 0;
            let mut next = 0;
            for (j, slot) in p.iter_mut().enumerate() {
                if j != i {
                    *slot = pt(next);
                    next += 1;
                }
            }
            GlobalToricData::new(&[0, 0, 0, -1], &v, &p).expect("valid flags")
        })
        .collect()
}

/// `v = (1, 1, 1, 2)` up to order with the points of two faces `i`, `j` equal.
fn type_i_hulls() -> Vec<GlobalToricData> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            for l in (0..4).filter(|l| *l != i && *l != j) {
                let k = (0..4).find(|k| ![i, j, l].contains(k)).expect("four faces");
                let mut v = [1u32; 4];
                v[l] = 2;
                let mut p = [None; 4];
                p[i] = pt(0);
                p[j] = pt(0);
                p[k] = pt(1);
                p[l] = pt(2);
                out.push(GlobalToricData::new(&[0, 0, 0, -2], &v, &p).expect("valid flags"));
            }
        }
    }
    out
}

/// `v = (0, 1, 2, 2)` up to order with distinct points.
fn type_ii_hulls() -> Vec<GlobalToricData> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in (0..4).filter(|j| *j != i) {
            let mut v = [2u32; 4];
            v[i] = 0;
            v[j] = 1;
            let mut p = [None; 4];
            p[j] = pt(0);
            let mut next = 1;
            for (k, slot) in p.iter_mut().enumerate() {
                if k != i && k != j {
                    *slot = pt(next);
                    next += 1;
                }
            }
            out.push(GlobalToricData::new(&[0, 0, 0, -2], &v, &p).expect("valid flags"));
        }
    }
    out
}

/// The equivariant stable reflexive hulls of torsion free sheaves with the
/// given `c_1`, `c_2` on projective space, each checked for stability, Chern
/// classes and the slice normalization at the first chart.
///
/// Supported: `c_1 = -1` with `c_2 ∈ {1, 2}`. For `c_2 = 2` the hulls of
/// `c_2 = 1` are included as type `"iii"`; they support quotients with a
/// one-dimensional part.
pub fn enumerate_hulls(preset: &str, c1: i64, c2: i64) -> Result<Vec<Hull>> {
    let x = ToricThreefold::preset(preset)?;
    if x.name != "P3" || c1 != -1 || !(1..=2).contains(&c2) {
        return Err(Error::UnsupportedPreset(format!("{preset} with c1 = {c1}, c2 = {c2}")));
    }
    let mut families: Vec<(&str, Vec<GlobalToricData>)> = Vec::new();
    if c2 == 1 {
        families.push(("c2=1", minimal_hulls()));
    } else {
        families.push(("i", type_i_hulls()));
        families.push(("ii", type_ii_hulls()));
        families.push(("iii", minimal_hulls()));
    }
    let mut out = Vec::new();
    for (kind, list) in families {
        for data in list {
            let (hc1, hc2, hc3) = chern_classes_p3(&data)?;
            if hc1 != c1 || hc2 > c2 || !mu_stable(&data, &x)? || !data.is_sliced_at(x.charts[0]) {
                return Err(Error::InvalidInput(format!("hull {data:?} of type {kind} fails its checks")));
            }
            out.push(Hull { kind: kind.to_string(), data, c2: hc2, c3: hc3 });
        }
    }
    Ok(out)
}
