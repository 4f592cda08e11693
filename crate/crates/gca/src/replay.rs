//! The replay checks behind the 2-local extraction: annihilator normal
//! forms, deduced-value spaces, and possible-value intersections, each
//! recomputed as a finite linear system and verified exactly against its
//! stated closed form, with dimensions and bases in the report.

use std::collections::BTreeMap;

use crate::algebra::{Element, Family, Generator};
use crate::derivation::{outer_d, Derivation, Window};
use crate::error::Error;
use crate::exprio::print_element;
use crate::report::{DerivationText, ReplayReport, WindowDoc};
use crate::scalar::GaussianRational;
use crate::solver::{
    annihilator, annihilator_relaxed, derivation_spans_equal, element_span,
    element_span_intersect, element_spans_equal, value_space,
};
use crate::twolocal::anchor_i0_j0;

fn gen(f: Family, m: i64) -> Element {
    Element::generator(Generator::plain(f, m))
}

fn ad(f: Family, m: i64) -> Derivation {
    Derivation::ad(gen(f, m)).expect("plain generator")
}

fn report(check: &str, window: &Window) -> ReplayReport {
    ReplayReport {
        check: check.to_string(),
        window: WindowDoc::from(window),
        params: BTreeMap::new(),
        pass: true,
        case: None,
        dimensions: BTreeMap::new(),
        derivation_basis: None,
        value_basis: None,
        notes: Vec::new(),
    }
}

fn replay_failed(check: &str, detail: String) -> Error {
    Error::ReplayFailed { check: check.to_string(), detail }
}

/// First basis vector of `computed` outside `expected`, printed; used to
/// surface the offending vector on a failed comparison.
fn offending_derivation(computed: &[Derivation], expected: &[Derivation]) -> String {
    for d in computed {
        let mut with = expected.to_vec();
        with.push(d.clone());
        if !derivation_spans_equal(&with, expected) {
            return d.to_string();
        }
    }
    for d in expected {
        let mut with = computed.to_vec();
        with.push(d.clone());
        if !derivation_spans_equal(&with, computed) {
            return format!("missing {}", d);
        }
    }
    "spans differ".to_string()
}

/// The two-parameter value family attached to `x`: span of
/// `sum(gamma_t I_t - delta_t J_t)` and `sum(gamma_t I_t + delta_t J_t)`,
/// where gamma and delta are the I and J coefficients of `x`. These are
/// exactly `[H_0, x]` and `D(x)`.
pub fn value_family(x: &Element) -> Result<Vec<Element>, Error> {
    let minus = ad(Family::H, 0).apply(x)?;
    let plus = outer_d(x)?;
    element_span(&[minus, plus])
}

/// Default probe indices for `x`: three distinct indices with absolute value
/// above `2*(1 + m)`, where `m` bounds the support degrees of `x`. The
/// spacing is the largest value that fits below `max_index`, capped at
/// `2m + 1`; at full spacing all probe-shifted supports are pairwise
/// disjoint and disjoint from the target family, which makes the collapse
/// provable rather than merely checked.
pub fn default_probes(x: &Element, max_index: i64) -> Result<Vec<i64>, Error> {
    let m = x.max_abs_degree().unwrap_or(0);
    let base = 2 * (1 + m) + 1;
    if base + 2 > max_index {
        return Err(Error::WindowTooSmall(format!(
            "default probes need indices up to {} but only {} is available",
            base + 2,
            max_index
        )));
    }
    let step = ((max_index - base) / 2).clamp(1, 2 * m + 1);
    Ok(vec![base, base + step, base + 2 * step])
}

/// Replay "3.1i": the annihilator of `L_i` equals
/// `span{ad(L_i), ad(H_0), ad(I_i), ad(J_i), D}`, dimension 5.
pub fn replay_31i(i: i64, window: &Window) -> Result<ReplayReport, Error> {
    let basis = annihilator(&gen(Family::L, i), window)?;
    let expected = vec![
        ad(Family::L, i),
        ad(Family::H, 0),
        ad(Family::I, i),
        ad(Family::J, i),
        Derivation::outer(GaussianRational::one()),
    ];
    if !derivation_spans_equal(&basis, &expected) {
        return Err(replay_failed(
            "3.1i",
            format!(
                "annihilator of L[{}] differs from the stated span; offending vector: {}",
                i,
                offending_derivation(&basis, &expected)
            ),
        ));
    }
    let mut r = report("3.1i", window);
    r.params.insert("i".to_string(), i.to_string());
    r.dimensions.insert("annihilator".to_string(), basis.len());
    r.derivation_basis = Some(basis.iter().map(DerivationText::from).collect());
    r.notes.push(format!("annihilator of L[{}] matches the stated 5-dimensional span", i));
    Ok(r)
}

/// Replay "3.1ii": the annihilator of `I_0 + J_0` forces the outer
/// coefficient and all H coefficients to zero and all L coefficients except
/// `L_0`; the free part is `span{ad(L_0)} + span{ad(I_k), ad(J_k)}` over the
/// window.
pub fn replay_31ii(window: &Window) -> Result<ReplayReport, Error> {
    let basis = annihilator(&anchor_i0_j0(), window)?;
    let n = window.radius();
    let mut expected = vec![ad(Family::L, 0)];
    for k in -n..=n {
        expected.push(ad(Family::I, k));
        expected.push(ad(Family::J, k));
    }
    if !derivation_spans_equal(&basis, &expected) {
        return Err(replay_failed(
            "3.1ii",
            format!(
                "annihilator of I[0]+J[0] differs from the stated span; offending vector: {}",
                offending_derivation(&basis, &expected)
            ),
        ));
    }
    if let Some(bad) = basis.iter().find(|d| !d.outer_coeff().is_zero()) {
        return Err(replay_failed(
            "3.1ii",
            format!("outer coefficient not eliminated: {}", bad),
        ));
    }
    let mut r = report("3.1ii", window);
    r.dimensions.insert("annihilator".to_string(), basis.len());
    r.notes.push("outer-coefficient pivot eliminated (lambda forced to 0)".to_string());
    r.notes.push(format!(
        "dimension 1 + 2*(2N+1) = {} at radius {}",
        1 + 2 * (2 * n + 1),
        n
    ));
    Ok(r)
}

/// Replay "3.2": with both L anchors annihilated, the value of any
/// derivation consistent with the table at `L_i` is forced to zero: the
/// possible values over the two anchor annihilators intersect in `{0}`.
pub fn replay_32(i: i64, window: &Window) -> Result<ReplayReport, Error> {
    let target = gen(Family::L, i);
    let from_l0 = value_space(&annihilator(&gen(Family::L, 0), window)?, &target)?;
    let from_l1 = value_space(&annihilator(&gen(Family::L, 1), window)?, &target)?;
    let intersection = element_span_intersect(&from_l0, &from_l1)?;
    if !intersection.is_empty() {
        return Err(replay_failed(
            "3.2",
            format!(
                "deduced value space at L[{}] is not zero; contains {}",
                i,
                print_element(&intersection[0])
            ),
        ));
    }
    let mut r = report("3.2", window);
    r.params.insert("i".to_string(), i.to_string());
    r.dimensions.insert("values_from_L0".to_string(), from_l0.len());
    r.dimensions.insert("values_from_L1".to_string(), from_l1.len());
    r.dimensions.insert("intersection".to_string(), 0);
    r.notes.push(format!("deduced value space at L[{}] is {{0}}", i));
    Ok(r)
}

fn validate_probes(probes: &[i64]) -> Result<Vec<i64>, Error> {
    let mut out: Vec<i64> = probes.to_vec();
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(Error::ProbeSetTooSmall("no probe indices supplied".to_string()));
    }
    Ok(out)
}

/// Replay "3.3": with every `L_i` annihilated, the possible values at `x`
/// collapse to the two-parameter family spanned by `[H_0, x]` and `D(x)`.
/// Probes default to `default_probes(x)`.
pub fn replay_33(
    x: &Element,
    probes: Option<&[i64]>,
    window: &Window,
) -> Result<ReplayReport, Error> {
    if !window.interior_contains_element(x) {
        return Err(Error::WindowTooSmall(format!(
            "x must be interior-supported at radius {}",
            window.radius()
        )));
    }
    let chosen = match probes {
        Some(p) => validate_probes(p)?,
        None => default_probes(x, window.radius())?,
    };
    if let Some(p) = chosen.iter().find(|p| !window.contains_degree(**p)) {
        return Err(Error::WindowTooSmall(format!(
            "probe index {} leaves the window [-{}, {}]",
            p,
            window.radius(),
            window.radius()
        )));
    }
    let family = value_family(x)?;
    let mut intersection: Option<Vec<Element>> = None;
    for &i in &chosen {
        let values = value_space(&annihilator_relaxed(&gen(Family::L, i), window)?, x)?;
        // The family is reachable from every probe; losing it means the
        // annihilator solve went wrong, not the probe choice.
        for f in &family {
            let mut with = values.clone();
            with.push(f.clone());
            if !element_spans_equal(&with, &values)? {
                return Err(replay_failed(
                    "3.3",
                    format!(
                        "value family member {} unreachable from probe L[{}]",
                        print_element(f),
                        i
                    ),
                ));
            }
        }
        intersection = Some(match intersection {
            None => values,
            Some(acc) => element_span_intersect(&acc, &values)?,
        });
    }
    let intersection = intersection.expect("at least one probe");
    if !element_spans_equal(&intersection, &family)? {
        return Err(Error::ProbeSetTooSmall(format!(
            "intersection over probes {:?} has dimension {}, the target family has dimension {}",
            chosen,
            intersection.len(),
            family.len()
        )));
    }
    let mut r = report("3.3", window);
    r.params.insert("x".to_string(), print_element(x));
    r.params.insert(
        "probes".to_string(),
        chosen.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","),
    );
    r.dimensions.insert("family".to_string(), family.len());
    r.dimensions.insert("intersection".to_string(), intersection.len());
    r.value_basis = Some(intersection.iter().map(print_element).collect());
    r.notes.push(format!(
        "possible values at {} collapse to the {}-parameter family",
        print_element(x),
        family.len()
    ));
    Ok(r)
}

/// Replay "3.4" for `x = L_p + I_2p + J_2p`: (a) the value family of `x`
/// meets the possible values over the annihilator of `I_0 + J_0` only in
/// zero, forcing the value at `x` to vanish; (b) the annihilator of `x` is
/// exactly `span{ad(x), ad(I_p), ad(J_p)}`.
pub fn replay_34(p: i64, window: &Window) -> Result<ReplayReport, Error> {
    if p == 0 {
        return Err(Error::Schema { path: "p".to_string(), detail: "p must be nonzero".to_string() });
    }
    if 3 * p.abs() > window.interior() {
        return Err(Error::WindowTooSmall(format!(
            "need 3*|p| <= interior, got p = {} with interior {}",
            p,
            window.interior()
        )));
    }
    let x = &(&gen(Family::L, p) + &gen(Family::I, 2 * p)) + &gen(Family::J, 2 * p);

    // (a) Forced value at x.
    let family = value_family(&x)?;
    let possible = value_space(&annihilator(&anchor_i0_j0(), window)?, &x)?;
    let forced = element_span_intersect(&family, &possible)?;
    if !forced.is_empty() {
        return Err(replay_failed(
            "3.4",
            format!(
                "value at {} not forced to zero; contains {}",
                print_element(&x),
                print_element(&forced[0])
            ),
        ));
    }

    // (b) Annihilator normal form.
    let basis = annihilator(&x, window)?;
    let expected = vec![
        Derivation::ad(x.clone()).expect("plain"),
        ad(Family::I, p),
        ad(Family::J, p),
    ];
    if !derivation_spans_equal(&basis, &expected) {
        return Err(replay_failed(
            "3.4",
            format!(
                "annihilator of {} differs from the stated span; offending vector: {}",
                print_element(&x),
                offending_derivation(&basis, &expected)
            ),
        ));
    }

    let mut r = report("3.4", window);
    r.params.insert("p".to_string(), p.to_string());
    r.dimensions.insert("annihilator".to_string(), basis.len());
    r.dimensions.insert("forced_value_space".to_string(), 0);
    r.derivation_basis = Some(basis.iter().map(DerivationText::from).collect());
    r.notes.push(format!("value at {} forced to 0", print_element(&x)));
    Ok(r)
}

/// Case labels of the "3.5" replay, following the structure of the proof:
/// by the presence of L, off-zero H, zero-degree H, or neither.
fn classify_case(x: &Element) -> &'static str {
    let has_l = x.support().any(|g| g.family == Family::L);
    if has_l {
        return "1";
    }
    let h_degrees: Vec<i64> =
        x.support().filter(|g| g.family == Family::H).map(|g| g.degree).collect();
    if h_degrees.iter().any(|d| *d != 0) {
        "2.1a"
    } else if !h_degrees.is_empty() {
        "2.1b"
    } else {
        "2.2"
    }
}

/// Replay "3.5": with all anchors annihilated, the value at an arbitrary
/// interior-supported `x` is forced to zero. The value family of `x` is
/// intersected with the possible values over the probe normal forms
/// `span{ad(L_p + I_2p + J_2p), ad(I_p), ad(J_p)}` for a probe set of `p`;
/// the intersection must be `{0}` in every case branch.
pub fn replay_35(
    x: &Element,
    probes: Option<&[i64]>,
    window: &Window,
) -> Result<ReplayReport, Error> {
    if !window.interior_contains_element(x) {
        return Err(Error::WindowTooSmall(format!(
            "x must be interior-supported at radius {}",
            window.radius()
        )));
    }
    let chosen = match probes {
        Some(p) => {
            let v = validate_probes(p)?;
            if v.contains(&0) {
                return Err(Error::Schema {
                    path: "probes".to_string(),
                    detail: "probe indices must be nonzero".to_string(),
                });
            }
            v
        }
        // Probe inner parts reach degree 2p, so cap the indices at half the
        // radius.
        None => default_probes(x, window.radius() / 2)?,
    };
    if let Some(p) = chosen.iter().find(|p| !window.contains_degree(2 * p.abs())) {
        return Err(Error::WindowTooSmall(format!(
            "probe p = {} needs 2*|p| <= radius {}",
            p,
            window.radius()
        )));
    }
    let case = classify_case(x);
    let family = value_family(x)?;
    let mut intersection = family.clone();
    for &p in &chosen {
        let xp = &(&gen(Family::L, p) + &gen(Family::I, 2 * p)) + &gen(Family::J, 2 * p);
        let normal_form = vec![
            Derivation::ad(xp).expect("plain"),
            ad(Family::I, p),
            ad(Family::J, p),
        ];
        let possible = value_space(&normal_form, x)?;
        intersection = element_span_intersect(&intersection, &possible)?;
        if intersection.is_empty() {
            break;
        }
    }
    if !intersection.is_empty() {
        return Err(Error::ProbeSetTooSmall(format!(
            "value at {} not forced to zero by probes {:?}; contains {}",
            print_element(x),
            chosen,
            print_element(&intersection[0])
        )));
    }
    let mut r = report("3.5", window);
    r.params.insert("x".to_string(), print_element(x));
    r.params.insert(
        "probes".to_string(),
        chosen.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","),
    );
    r.case = Some(case.to_string());
    r.dimensions.insert("family".to_string(), family.len());
    r.dimensions.insert("intersection".to_string(), 0);
    r.notes.push(format!("case {}: value at {} forced to 0", case, print_element(x)));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replay_31i_examples() {
        let w = Window::new(14, 7).unwrap();
        let r = replay_31i(3, &w).unwrap();
        assert_eq!(r.dimensions["annihilator"], 5);
        // i = 0 degeneracy still passes.
        let w = Window::new(6, 3).unwrap();
        let r = replay_31i(0, &w).unwrap();
        assert_eq!(r.dimensions["annihilator"], 5);
    }

    #[test]
    fn replay_31ii_small_window() {
        let w = Window::new(6, 3).unwrap();
        let r = replay_31ii(&w).unwrap();
        assert_eq!(r.dimensions["annihilator"], 27);
    }

    #[test]
    fn replay_32_examples() {
        let w = Window::new(14, 7).unwrap();
        assert!(replay_32(5, &w).unwrap().pass);
        assert!(replay_32(0, &w).unwrap().pass);
        assert!(replay_32(-3, &w).unwrap().pass);
    }

    #[test]
    fn replay_33_with_user_probes() {
        let w = Window::new(24, 12).unwrap();
        let x = &gen(Family::I, 2) + &gen(Family::J, 5);
        let r = replay_33(&x, Some(&[7, 9, 11]), &w).unwrap();
        assert_eq!(r.dimensions["family"], 2);
        assert_eq!(r.dimensions["intersection"], 2);
    }

    #[test]
    fn replay_33_with_default_probes() {
        let w = Window::new(24, 12).unwrap();
        let x = &gen(Family::I, 2) + &gen(Family::J, 5);
        let r = replay_33(&x, None, &w).unwrap();
        assert_eq!(r.dimensions["intersection"], 2);
    }

    #[test]
    fn replay_33_collapses_for_l_only_x() {
        let w = Window::new(24, 12).unwrap();
        let x = gen(Family::L, 3);
        let r = replay_33(&x, None, &w).unwrap();
        assert_eq!(r.dimensions["family"], 0);
        assert_eq!(r.dimensions["intersection"], 0);
    }

    #[test]
    fn replay_33_zero_x() {
        let w = Window::new(12, 6).unwrap();
        let r = replay_33(&Element::zero(), None, &w).unwrap();
        assert_eq!(r.dimensions["intersection"], 0);
    }

    #[test]
    fn replay_33_flags_insufficient_probes() {
        // A single small probe leaves extra reachable values.
        let w = Window::new(24, 12).unwrap();
        let x = &gen(Family::I, 2) + &gen(Family::J, 5);
        let r = replay_33(&x, Some(&[1]), &w);
        assert!(matches!(r, Err(Error::ProbeSetTooSmall(_))));
    }

    #[test]
    fn replay_34_examples() {
        let w = Window::new(10, 5).unwrap();
        let r = replay_34(1, &w).unwrap();
        assert_eq!(r.dimensions["annihilator"], 3);
        let r = replay_34(-1, &w).unwrap();
        assert_eq!(r.dimensions["annihilator"], 3);
        let w = Window::new(14, 7).unwrap();
        let r = replay_34(2, &w).unwrap();
        assert_eq!(r.dimensions["annihilator"], 3);
    }

    #[test]
    fn replay_34_validates_params() {
        let w = Window::new(10, 5).unwrap();
        assert!(matches!(replay_34(0, &w), Err(Error::Schema { .. })));
        assert!(matches!(replay_34(2, &w), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn replay_35_case_coverage() {
        let w = Window::new(48, 24).unwrap();
        let two = GaussianRational::from_integer(2);
        // Case 1: an L term is present.
        let x = &gen(Family::L, 3).scale(&two) + &gen(Family::H, 1);
        let r = replay_35(&x, None, &w).unwrap();
        assert_eq!(r.case.as_deref(), Some("1"));
        // Case 2.1a: H supported off zero.
        let x = &gen(Family::H, 2) + &gen(Family::J, 1);
        let r = replay_35(&x, None, &w).unwrap();
        assert_eq!(r.case.as_deref(), Some("2.1a"));
        // Case 2.1b: H supported only at zero.
        let x = &gen(Family::H, 0) + &gen(Family::I, 2);
        let r = replay_35(&x, None, &w).unwrap();
        assert_eq!(r.case.as_deref(), Some("2.1b"));
        // Case 2.2: no L or H part.
        let x = &gen(Family::I, 1) + &gen(Family::J, -1);
        let r = replay_35(&x, None, &w).unwrap();
        assert_eq!(r.case.as_deref(), Some("2.2"));
    }
}
