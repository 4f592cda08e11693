//! Exact window-truncated solving: derivation spaces as nullspaces,
//! annihilators, joint witnesses, and the center check.
//!
//! All systems are assembled from the generator bracket table and solved by
//! exact Gaussian elimination over Q(i) with canonical pivot order derived
//! from the generator order, so output bases are deterministic reduced
//! echelon bases and dimension counts are exact.

use std::collections::BTreeMap;

use crate::algebra::{bracket_generators, Basis, Element, Family, Generator};
use crate::derivation::{outer_d, Derivation, LinearMapOnWindow, Window};
use crate::error::Error;
use crate::linalg::{
    intersect_spans, nullspace, rref, solve_affine, spans_equal, Rref, SparseVec,
};
use crate::scalar::GaussianRational;

/// Coordinate of a normal-form derivation: one inner coefficient per window
/// generator, plus the outer coefficient last.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) enum DerCoord {
    Inner(Generator),
    Outer,
}

/// Coordinate of a homogeneous window map: the coefficient of target family
/// `fam` in the image of `src`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) struct MapCoord {
    src: Generator,
    fam: Family,
}

fn derivation_to_vec(d: &Derivation) -> SparseVec<DerCoord> {
    let mut v = SparseVec::new();
    for (g, c) in d.inner().iter() {
        v.insert_add(DerCoord::Inner(*g), c.clone());
    }
    v.insert_add(DerCoord::Outer, d.outer_coeff().clone());
    v
}

fn vec_to_derivation(v: &SparseVec<DerCoord>) -> Derivation {
    let mut inner = Element::zero();
    let mut outer = GaussianRational::zero();
    for (k, c) in v.iter() {
        match k {
            DerCoord::Inner(g) => inner.add_term(*g, c.clone()).expect("plain inner"),
            DerCoord::Outer => outer = c.clone(),
        }
    }
    Derivation::new(inner, outer).expect("plain inner")
}

fn element_to_vec(x: &Element) -> SparseVec<Generator> {
    let mut v = SparseVec::new();
    for (g, c) in x.iter() {
        v.insert_add(*g, c.clone());
    }
    v
}

fn vec_to_element(v: &SparseVec<Generator>) -> Element {
    let mut e = Element::zero();
    for (g, c) in v.iter() {
        e.add_term(*g, c.clone()).expect("single basis");
    }
    e
}

fn check_plain(x: &Element) -> Result<(), Error> {
    if x.basis() == Some(Basis::Bold) {
        return Err(Error::BasisMismatch { expected: Basis::Plain, found: Basis::Bold });
    }
    Ok(())
}

/// Canonical reduced-echelon basis of the span of the given elements.
pub fn element_span(xs: &[Element]) -> Result<Vec<Element>, Error> {
    let mut basis = None;
    for x in xs {
        if let Some(b) = x.basis() {
            match basis {
                None => basis = Some(b),
                Some(prev) if prev != b => {
                    return Err(Error::BasisMismatch { expected: prev, found: b })
                }
                Some(_) => {}
            }
        }
    }
    Ok(rref(xs.iter().map(element_to_vec)).rows().iter().map(vec_to_element).collect())
}

/// Canonical basis of the intersection of two element spans.
pub fn element_span_intersect(a: &[Element], b: &[Element]) -> Result<Vec<Element>, Error> {
    element_span(a)?;
    element_span(b)?;
    let va: Vec<_> = a.iter().map(element_to_vec).collect();
    let vb: Vec<_> = b.iter().map(element_to_vec).collect();
    Ok(intersect_spans(&va, &vb).iter().map(vec_to_element).collect())
}

/// True when two element lists span the same subspace.
pub fn element_spans_equal(a: &[Element], b: &[Element]) -> Result<bool, Error> {
    element_span(a)?;
    element_span(b)?;
    let va: Vec<_> = a.iter().map(element_to_vec).collect();
    let vb: Vec<_> = b.iter().map(element_to_vec).collect();
    Ok(spans_equal(&va, &vb))
}

/// Canonical reduced-echelon basis of the span of the given derivations.
pub fn derivation_span(ds: &[Derivation]) -> Vec<Derivation> {
    rref(ds.iter().map(derivation_to_vec)).rows().iter().map(vec_to_derivation).collect()
}

/// True when two derivation lists span the same subspace.
pub fn derivation_spans_equal(a: &[Derivation], b: &[Derivation]) -> bool {
    let va: Vec<_> = a.iter().map(derivation_to_vec).collect();
    let vb: Vec<_> = b.iter().map(derivation_to_vec).collect();
    spans_equal(&va, &vb)
}

/// The possible values `{d(x) : d in span(basis)}` as a canonical element
/// span.
pub fn value_space(basis: &[Derivation], x: &Element) -> Result<Vec<Element>, Error> {
    let values: Vec<Element> =
        basis.iter().map(|d| d.apply(x)).collect::<Result<_, _>>()?;
    element_span(&values)
}

fn der_universe(window: &Window) -> impl Iterator<Item = DerCoord> + '_ {
    window.generators().map(DerCoord::Inner).chain(std::iter::once(DerCoord::Outer))
}

/// Rows of the linear system `[w, x] + lambda*D(x) = value` over the
/// derivation coordinates, one row per target generator.
fn constraint_rows(
    window: &Window,
    x: &Element,
    value: &Element,
) -> Vec<(SparseVec<DerCoord>, GaussianRational)> {
    let mut rows: BTreeMap<Generator, SparseVec<DerCoord>> = BTreeMap::new();
    for g in window.generators() {
        for (gx, cx) in x.iter() {
            if let Some((k, target)) = bracket_generators(&g, gx) {
                let coeff = cx * &GaussianRational::from_integer(k);
                rows.entry(target)
                    .or_insert_with(SparseVec::new)
                    .insert_add(DerCoord::Inner(g), coeff);
            }
        }
    }
    for (g, c) in outer_d(x).expect("plain element").iter() {
        rows.entry(*g).or_insert_with(SparseVec::new).insert_add(DerCoord::Outer, c.clone());
    }
    // Every target that appears on either side contributes one equation.
    for g in value.support() {
        rows.entry(*g).or_insert_with(SparseVec::new);
    }
    rows.into_iter().map(|(g, row)| (row, value.coeff(&g))).collect()
}

/// The affine space of derivations attaining prescribed values at prescribed
/// points: a canonical particular solution (free coordinates zero) plus a
/// basis of the homogeneous space.
#[derive(Clone, Debug)]
pub struct WitnessSpace {
    pub particular: Derivation,
    pub homogeneous_basis: Vec<Derivation>,
}

impl WitnessSpace {
    /// Membership test for the affine space.
    pub fn contains(&self, d: &Derivation) -> bool {
        let diff = derivation_to_vec(&d.add(&self.particular.neg()));
        let basis: Vec<_> = self.homogeneous_basis.iter().map(derivation_to_vec).collect();
        rref(basis).contains(diff)
    }

    pub fn dimension(&self) -> usize {
        self.homogeneous_basis.len()
    }
}

/// Solves `d(point) = value` for every listed pair, over derivations with
/// window-supported inner part. Points must be interior-supported.
pub fn solve_witness(
    constraints: &[(Element, Element)],
    window: &Window,
) -> Result<WitnessSpace, Error> {
    for (x, _) in constraints {
        check_plain(x)?;
        if !window.interior_contains_element(x) {
            return Err(Error::WindowTooSmall(format!(
                "point {} is not supported in the interior [-{}, {}]",
                x,
                window.interior(),
                window.interior()
            )));
        }
    }
    for (_, v) in constraints {
        check_plain(v)?;
    }
    solve_witness_relaxed(constraints, window)
}

/// As `solve_witness` but only requires points to be window-supported; used
/// internally for probe points that live outside the certified interior.
pub(crate) fn solve_witness_relaxed(
    constraints: &[(Element, Element)],
    window: &Window,
) -> Result<WitnessSpace, Error> {
    let mut rows = Vec::new();
    for (x, v) in constraints {
        if !window.contains_element(x) {
            return Err(Error::WindowTooSmall(format!(
                "point {} is not supported in the window [-{}, {}]",
                x,
                window.radius(),
                window.radius()
            )));
        }
        rows.extend(constraint_rows(window, x, v));
    }
    let solution = solve_affine(rows, der_universe(window)).ok_or(Error::InfeasibleWitness)?;
    Ok(WitnessSpace {
        particular: vec_to_derivation(&solution.particular),
        homogeneous_basis: solution.homogeneous.iter().map(vec_to_derivation).collect(),
    })
}

/// The affine space `{d : d(x) = vx, d(y) = vy}` with window-supported
/// inner part; `InfeasibleWitness` when empty.
pub fn witness_solve(
    x: &Element,
    vx: &Element,
    y: &Element,
    vy: &Element,
    window: &Window,
) -> Result<WitnessSpace, Error> {
    solve_witness(&[(x.clone(), vx.clone()), (y.clone(), vy.clone())], window)
}

/// Canonical basis of the derivations annihilating every listed point.
pub fn joint_annihilator(points: &[Element], window: &Window) -> Result<Vec<Derivation>, Error> {
    let constraints: Vec<(Element, Element)> =
        points.iter().map(|x| (x.clone(), Element::zero())).collect();
    Ok(solve_witness(&constraints, window)?.homogeneous_basis)
}

/// Canonical basis of `{d = ad(w) + lambda*D, w window-supported : d(x) = 0}`.
///
/// The degenerate input `x = 0` returns the full derivation space on the
/// window rather than erroring.
pub fn annihilator(x: &Element, window: &Window) -> Result<Vec<Derivation>, Error> {
    joint_annihilator(std::slice::from_ref(x), window)
}

/// As `annihilator` but only requires window support; used for probe points.
pub(crate) fn annihilator_relaxed(x: &Element, window: &Window) -> Result<Vec<Derivation>, Error> {
    check_plain(x)?;
    let constraints = [(x.clone(), Element::zero())];
    Ok(solve_witness_relaxed(&constraints, window)?.homogeneous_basis)
}

/// Basis of the interior-supported elements commuting with every in-window
/// generator. Expected empty: the algebra has trivial center, which is what
/// makes inner parts of derivations unique.
pub fn center_check(window: &Window) -> Vec<Element> {
    // One equation per (window generator, target generator) pair.
    let mut rows: BTreeMap<(Generator, Generator), SparseVec<Generator>> = BTreeMap::new();
    for h in window.interior_generators() {
        for g in window.generators() {
            if let Some((k, target)) = bracket_generators(&h, &g) {
                rows.entry((g, target))
                    .or_insert_with(SparseVec::new)
                    .insert_add(h, GaussianRational::from_integer(k));
            }
        }
    }
    let system = rref(rows.into_values());
    nullspace(&system, window.interior_generators()).iter().map(vec_to_element).collect()
}

/// Result of solving the degree-`d` derivation space on a window.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub degree: i64,
    pub window: Window,
    /// Canonical basis of the solution space on the full window.
    pub basis: Vec<LinearMapOnWindow>,
    /// Canonical basis after restriction to the interior generators.
    pub interior_basis: Vec<LinearMapOnWindow>,
    /// Dimension after restriction to the interior.
    pub interior_dimension: usize,
    /// Whether the interior restriction equals the span of the degree-`d`
    /// ad maps (plus the outer derivation at degree 0), as reduced-echelon
    /// bases.
    pub matches_known_span: bool,
    /// Degree 0 only: whether the outer derivation itself lies in the
    /// full-window solution space (not merely up to inner parts).
    pub contains_outer_d: Option<bool>,
}

impl DerivationSpace {
    pub fn window_dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Whether a degree-`d` map can represent all images of the pair `(n1, n2)`
/// inside the window: arguments, bracket, and all image degrees must stay in
/// range. Leibniz constraints are imposed exactly on these pairs.
fn pair_resolvable(window: &Window, degree: i64, n1: i64, n2: i64) -> bool {
    window.contains_degree(n1 + n2)
        && window.contains_degree(n1 + degree)
        && window.contains_degree(n2 + degree)
        && window.contains_degree(n1 + n2 + degree)
}

fn leibniz_rows(window: &Window, degree: i64) -> Vec<SparseVec<MapCoord>> {
    let gens: Vec<Generator> = window.generators().collect();
    let mut rows = Vec::new();
    for (i, g1) in gens.iter().enumerate() {
        for g2 in gens.iter().skip(i + 1) {
            // Same degree pairs across families are fine; the skipped
            // diagonal (g, g) is identically satisfied by antisymmetry.
            if !pair_resolvable(window, degree, g1.degree, g2.degree) {
                continue;
            }
            let mut eq: BTreeMap<Generator, SparseVec<MapCoord>> = BTreeMap::new();
            // phi([g1, g2]) expands over the image coordinates of the
            // bracket generator.
            if let Some((k, g3)) = bracket_generators(g1, g2) {
                for fam in Family::ALL {
                    eq.entry(Generator::plain(fam, g3.degree + degree))
                        .or_insert_with(SparseVec::new)
                        .insert_add(
                            MapCoord { src: g3, fam },
                            GaussianRational::from_integer(k),
                        );
                }
            }
            // -[phi(g1), g2] and -[g1, phi(g2)].
            for fam in Family::ALL {
                let im1 = Generator::plain(fam, g1.degree + degree);
                if let Some((k, target)) = bracket_generators(&im1, g2) {
                    eq.entry(target).or_insert_with(SparseVec::new).insert_add(
                        MapCoord { src: *g1, fam },
                        GaussianRational::from_integer(-k),
                    );
                }
                let im2 = Generator::plain(fam, g2.degree + degree);
                if let Some((k, target)) = bracket_generators(g1, &im2) {
                    eq.entry(target).or_insert_with(SparseVec::new).insert_add(
                        MapCoord { src: *g2, fam },
                        GaussianRational::from_integer(-k),
                    );
                }
            }
            rows.extend(eq.into_values().filter(|r| !r.is_zero()));
        }
    }
    rows
}

fn map_universe(window: &Window, degree: i64) -> Vec<MapCoord> {
    let mut u = Vec::new();
    for src in window.generators() {
        if !window.contains_degree(src.degree + degree) {
            continue;
        }
        for fam in Family::ALL {
            u.push(MapCoord { src, fam });
        }
    }
    u
}

fn vec_to_map(v: &SparseVec<MapCoord>, window: &Window, degree: i64) -> LinearMapOnWindow {
    let mut images: BTreeMap<Generator, Element> = BTreeMap::new();
    for (k, c) in v.iter() {
        let target = Generator::plain(k.fam, k.src.degree + degree);
        images
            .entry(k.src)
            .or_insert_with(Element::zero)
            .add_term(target, c.clone())
            .expect("plain images");
    }
    LinearMapOnWindow::from_images(*window, images).expect("window-supported images")
}

/// The degree-`d` ad maps (and the outer derivation at degree 0) restricted
/// to the interior, as sparse vectors.
fn known_span_interior(window: &Window, degree: i64) -> Vec<SparseVec<MapCoord>> {
    let mut span = Vec::new();
    for fam in Family::ALL {
        let w = Element::generator(Generator::plain(fam, degree));
        let d = Derivation::ad(w).expect("plain");
        span.push(derivation_interior_vec(&d, window, degree));
    }
    if degree == 0 {
        let d = Derivation::outer(GaussianRational::one());
        span.push(derivation_interior_vec(&d, window, degree));
    }
    span
}

fn derivation_interior_vec(d: &Derivation, window: &Window, degree: i64) -> SparseVec<MapCoord> {
    let mut v = SparseVec::new();
    for src in window.interior_generators() {
        let image = d.apply(&Element::generator(src)).expect("plain");
        for (g, c) in image.iter() {
            debug_assert_eq!(g.degree, src.degree + degree);
            v.insert_add(MapCoord { src, fam: g.family }, c.clone());
        }
    }
    v
}

fn restrict_to_interior(v: &SparseVec<MapCoord>, window: &Window) -> SparseVec<MapCoord> {
    v.filter_keys(|k| window.interior_contains_degree(k.src.degree))
}

/// Solves for all homogeneous degree-`d` linear maps satisfying the Leibniz
/// identity on every fully resolvable in-window generator pair, and compares
/// the interior restriction of the solution space against the known span
/// `{ad(L_d), ad(H_d), ad(I_d), ad(J_d)}` (plus `D` at degree 0).
pub fn derivation_space(window: &Window, degree: i64) -> Result<DerivationSpace, Error> {
    if degree.abs() > window.radius() - window.interior() {
        return Err(Error::WindowTooSmall(format!(
            "degree {} needs |degree| <= radius - interior = {}",
            degree,
            window.radius() - window.interior()
        )));
    }
    let system = rref(leibniz_rows(window, degree));
    let solution = nullspace(&system, map_universe(window, degree));

    let restricted: Vec<SparseVec<MapCoord>> =
        solution.iter().map(|v| restrict_to_interior(v, window)).collect();
    let restricted_basis = rref(restricted);
    let known = rref(known_span_interior(window, degree));
    let matches_known_span = restricted_basis == known;
    let interior_dimension = restricted_basis.rank();
    let interior_basis =
        restricted_basis.rows().iter().map(|v| vec_to_map(v, window, degree)).collect();

    let contains_outer_d = (degree == 0).then(|| {
        let d = Derivation::outer(GaussianRational::one());
        let mut v = SparseVec::new();
        for src in window.generators() {
            let image = d.apply(&Element::generator(src)).expect("plain");
            for (g, c) in image.iter() {
                v.insert_add(MapCoord { src, fam: g.family }, c.clone());
            }
        }
        Rref::from_canonical_rows(solution.clone()).contains(v)
    });

    Ok(DerivationSpace {
        degree,
        window: *window,
        basis: solution.iter().map(|v| vec_to_map(v, window, degree)).collect(),
        interior_basis,
        interior_dimension,
        matches_known_span,
        contains_outer_d,
    })
}
