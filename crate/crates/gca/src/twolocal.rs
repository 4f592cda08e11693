//! Desk-scale 2-local derivation instances and the constructive extraction
//! of a genuine derivation from one.
//!
//! An instance is a finite table of (test point, claimed value) pairs
//! standing in for the restriction of a 2-local derivation to a test set.
//! Extraction replays the constructive argument: solve a witness at the two
//! L anchors, correct by `mu*ad(H_0) + nu*D` read off at `I_0 + J_0`, then
//! verify the whole table against the result. Tables inconsistent with
//! every derivation always surface as an error, never as a silent answer.

use crate::algebra::{Basis, Element, Family, Generator};
use crate::derivation::{Derivation, Window};
use crate::error::Error;
use crate::scalar::GaussianRational;
use crate::solver::{witness_solve, WitnessSpace};

/// The anchor point `L_0`.
pub fn anchor_l0() -> Element {
    Element::generator(Generator::plain(Family::L, 0))
}

/// The anchor point `L_1`.
pub fn anchor_l1() -> Element {
    Element::generator(Generator::plain(Family::L, 1))
}

/// The anchor point `I_0 + J_0`.
pub fn anchor_i0_j0() -> Element {
    &Element::generator(Generator::plain(Family::I, 0))
        + &Element::generator(Generator::plain(Family::J, 0))
}

/// A finite table of (point, value) pairs with a degree window.
///
/// Points are distinct, nonzero, plain-basis, and supported in the window
/// interior. Values are arbitrary plain elements; inconsistent values are
/// the extraction errors' job, not the constructor's.
#[derive(Clone, Debug)]
pub struct TwoLocalInstance {
    window: Window,
    table: Vec<(Element, Element)>,
}

impl TwoLocalInstance {
    pub fn new(window: Window, table: Vec<(Element, Element)>) -> Result<Self, Error> {
        for (idx, (point, value)) in table.iter().enumerate() {
            let path = format!("/table/{idx}/point");
            if point.basis() == Some(Basis::Bold) || value.basis() == Some(Basis::Bold) {
                return Err(Error::Schema {
                    path,
                    detail: "points and values must use the plain basis".to_string(),
                });
            }
            if point.is_zero() {
                return Err(Error::Schema { path, detail: "points must be nonzero".to_string() });
            }
            if !window.interior_contains_element(point) {
                return Err(Error::Schema {
                    path,
                    detail: format!(
                        "point {} is not supported in the interior [-{}, {}]",
                        point,
                        window.interior(),
                        window.interior()
                    ),
                });
            }
            if table[..idx].iter().any(|(p, _)| p == point) {
                return Err(Error::Schema {
                    path,
                    detail: format!("duplicate point {}", point),
                });
            }
        }
        Ok(TwoLocalInstance { window, table })
    }

    /// The table induced by a genuine derivation on the given points.
    pub fn induced_by(
        d: &Derivation,
        points: Vec<Element>,
        window: Window,
    ) -> Result<Self, Error> {
        let table = points
            .into_iter()
            .map(|p| {
                let v = d.apply(&p)?;
                Ok((p, v))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        TwoLocalInstance::new(window, table)
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn table(&self) -> &[(Element, Element)] {
        &self.table
    }

    pub fn value_at(&self, point: &Element) -> Option<&Element> {
        self.table.iter().find(|(p, _)| p == point).map(|(_, v)| v)
    }

    pub fn has_anchors(&self) -> bool {
        self.value_at(&anchor_l0()).is_some()
            && self.value_at(&anchor_l1()).is_some()
            && self.value_at(&anchor_i0_j0()).is_some()
    }

    /// A new instance with every value scaled by `k`.
    pub fn scale_values(&self, k: &GaussianRational) -> Self {
        TwoLocalInstance {
            window: self.window,
            table: self.table.iter().map(|(p, v)| (p.clone(), v.scale(k))).collect(),
        }
    }
}

/// Checks the scaling constraint a 2-local map must satisfy: whenever one
/// table point is a scalar multiple of another, the values scale the same
/// way. Tables with no proportional points pass vacuously.
pub fn validate_homogeneity(inst: &TwoLocalInstance) -> bool {
    let table = inst.table();
    for (i, (x, vx)) in table.iter().enumerate() {
        for (y, vy) in table.iter().skip(i + 1) {
            if let Some(k) = proportionality(x, y) {
                // y = k*x, so the values must satisfy vy = k*vx.
                if &vx.scale(&k) != vy {
                    return false;
                }
            }
        }
    }
    true
}

/// If `y = k * x` for a scalar `k`, returns `k`.
fn proportionality(x: &Element, y: &Element) -> Option<GaussianRational> {
    if x.is_zero() || y.is_zero() || x.support_size() != y.support_size() {
        return None;
    }
    let (g0, c0) = x.iter().next().expect("nonzero");
    let d0 = y.coeff(g0);
    if d0.is_zero() {
        return None;
    }
    let k = d0.checked_div(c0).expect("nonzero coefficient");
    (&x.scale(&k) == y).then_some(k)
}

/// The canonical anchor witness: the `WitnessSpace` for the two L anchors.
pub fn anchor_witness(inst: &TwoLocalInstance) -> Result<WitnessSpace, Error> {
    let v0 = inst
        .value_at(&anchor_l0())
        .ok_or_else(|| Error::MissingAnchor("L[0]".to_string()))?;
    let v1 = inst
        .value_at(&anchor_l1())
        .ok_or_else(|| Error::MissingAnchor("L[1]".to_string()))?;
    witness_solve(&anchor_l0(), v0, &anchor_l1(), v1, inst.window())
}

/// Extracts the unique derivation consistent with the instance.
///
/// Steps: (1) take the canonical witness at the anchors `L_0`, `L_1`;
/// (2) the residual at `I_0 + J_0` must lie in span{I_0, J_0}; writing it as
/// `vI*I_0 + vJ*J_0`, set `mu = (vI - vJ)/2`, `nu = (vI + vJ)/2`;
/// (3) return `witness + mu*ad(H_0) + nu*D`; (4) verify every table point.
/// The result does not depend on the witness chosen in step (1): the
/// correction in step (2) absorbs the whole witness ambiguity, because the
/// joint annihilator of the L anchors is span{ad(H_0), D}.
pub fn extract_derivation(inst: &TwoLocalInstance) -> Result<Derivation, Error> {
    let witness = anchor_witness(inst)?.particular;
    extract_with_witness(inst, &witness)
}

/// Extraction steps (2)-(4) from an explicit anchor witness. Exposed so the
/// witness-independence property can be exercised directly.
pub fn extract_with_witness(
    inst: &TwoLocalInstance,
    witness: &Derivation,
) -> Result<Derivation, Error> {
    let i0j0 = anchor_i0_j0();
    let claimed = inst
        .value_at(&i0j0)
        .ok_or_else(|| Error::MissingAnchor("I[0]+J[0]".to_string()))?;
    let residual = claimed - &witness.apply(&i0j0)?;

    let i0 = Generator::plain(Family::I, 0);
    let j0 = Generator::plain(Family::J, 0);
    if residual.support().any(|g| *g != i0 && *g != j0) {
        return Err(Error::NotInSpan { residual });
    }
    let v_i = residual.coeff(&i0);
    let v_j = residual.coeff(&j0);
    let half = GaussianRational::from_ratio(1, 2).expect("nonzero denominator");
    let mu = &(&v_i - &v_j) * &half;
    let nu = &(&v_i + &v_j) * &half;

    let correction = Derivation::ad(Element::generator(Generator::plain(Family::H, 0)))
        .expect("plain")
        .scale(&mu)
        .add(&Derivation::outer(nu));
    let extracted = witness.add(&correction);

    for (point, value) in inst.table() {
        let actual = extracted.apply(point)?;
        if &actual != value {
            return Err(Error::TableMismatch {
                point: point.clone(),
                expected: value.clone(),
                actual,
            });
        }
    }
    Ok(extracted)
}
