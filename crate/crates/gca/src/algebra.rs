//! Basis generators, sparse elements, the two bracket tables, and the
//! basis-change isomorphism between them.
//!
//! The algebra has basis families L, H, I, J indexed by integers, in two
//! bases related by the invertible substitution `H_m -> i*Hb_m`,
//! `I_m -> Ib_m + i*Jb_m`, `J_m -> Ib_m - i*Jb_m` (`b` marks the bold basis).
//! Elements are finitely supported Q(i)-linear combinations of generators of
//! a single basis; mixed-basis elements are unrepresentable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::Error;
use crate::scalar::GaussianRational;

/// The four generator families, ordered `L < H < I < J`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    L,
    H,
    I,
    J,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::L, Family::H, Family::I, Family::J];

    pub fn letter(self) -> char {
        match self {
            Family::L => 'L',
            Family::H => 'H',
            Family::I => 'I',
            Family::J => 'J',
        }
    }
}

/// Which of the two bases a generator belongs to.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Basis {
    Plain,
    Bold,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Plain => write!(f, "plain"),
            Basis::Bold => write!(f, "bold"),
        }
    }
}

/// One basis symbol: a family, an integer degree, and a basis tag.
///
/// The derived order (basis, then family, then degree) is the canonical
/// order used for serialization and solver pivoting.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Generator {
    pub basis: Basis,
    pub family: Family,
    pub degree: i64,
}

impl Generator {
    pub fn new(basis: Basis, family: Family, degree: i64) -> Self {
        Generator { basis, family, degree }
    }

    pub fn plain(family: Family, degree: i64) -> Self {
        Generator::new(Basis::Plain, family, degree)
    }

    pub fn bold(family: Family, degree: i64) -> Self {
        Generator::new(Basis::Bold, family, degree)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = if self.basis == Basis::Bold { "b" } else { "" };
        write!(f, "{}{}[{}]", self.family.letter(), b, self.degree)
    }
}

/// A finitely supported Q(i)-linear combination of generators of one basis.
///
/// Canonical sparse form: no stored zero coefficients, terms ordered by the
/// generator order. Equality is coefficient-wise. The zero element carries
/// no basis tag and is compatible with both bases.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<Generator, GaussianRational>,
}

impl Element {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    /// The element `1 * g`.
    pub fn generator(g: Generator) -> Self {
        Element::term(g, GaussianRational::one())
    }

    /// The element `c * g`.
    pub fn term(g: Generator, c: GaussianRational) -> Self {
        let mut e = Element::zero();
        if !c.is_zero() {
            e.terms.insert(g, c);
        }
        e
    }

    /// Builds an element from (generator, coefficient) pairs, combining like
    /// terms; errors if the pairs mix bases.
    pub fn from_terms<T>(pairs: T) -> Result<Self, Error>
    where
        T: IntoIterator<Item = (Generator, GaussianRational)>,
    {
        let mut e = Element::zero();
        for (g, c) in pairs {
            e.add_term(g, c)?;
        }
        Ok(e)
    }

    /// Adds `c * g` in place; errors if `g`'s basis differs from the
    /// element's existing basis.
    pub fn add_term(&mut self, g: Generator, c: GaussianRational) -> Result<(), Error> {
        if let Some(b) = self.basis() {
            if b != g.basis {
                return Err(Error::BasisMismatch { expected: b, found: g.basis });
            }
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    /// The basis of the support, `None` for the zero element.
    pub fn basis(&self) -> Option<Basis> {
        self.terms.keys().next().map(|g| g.basis)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `g` (zero when absent).
    pub fn coeff(&self, g: &Generator) -> GaussianRational {
        self.terms.get(g).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Generator, &GaussianRational)> {
        self.terms.iter()
    }

    /// Support generators in canonical order.
    pub fn support(&self) -> impl Iterator<Item = &Generator> {
        self.terms.keys()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    /// Largest |degree| over the support, `None` for zero.
    pub fn max_abs_degree(&self) -> Option<i64> {
        self.terms.keys().map(|g| g.degree.abs()).max()
    }

    /// True when every support degree lies in `[-radius, radius]`.
    pub fn supported_within(&self, radius: i64) -> bool {
        self.max_abs_degree().is_none_or(|d| d <= radius)
    }

    pub fn scale(&self, c: &GaussianRational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(g, v)| (*g, v * c)).collect(),
        }
    }

    /// Fallible sum, reporting a `BasisMismatch` instead of panicking.
    pub fn checked_add(&self, rhs: &Element) -> Result<Element, Error> {
        if let (Some(a), Some(b)) = (self.basis(), rhs.basis()) {
            if a != b {
                return Err(Error::BasisMismatch { expected: a, found: b });
            }
        }
        let mut out = self.clone();
        for (g, c) in rhs.iter() {
            out.add_term(*g, c.clone())?;
        }
        Ok(out)
    }
}

/// Sum of two elements. Panics if the bases differ; use `checked_add` on
/// untrusted inputs.
impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("added elements of different bases")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self.terms.iter().map(|(g, v)| (*g, -v)).collect(),
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Structure constant of a generator pair: `[a, b] = c * g` or zero.
///
/// Both tables have single-generator brackets with integer coefficients.
/// Callers guarantee matching bases.
pub(crate) fn bracket_generators(a: &Generator, b: &Generator) -> Option<(i64, Generator)> {
    debug_assert_eq!(a.basis, b.basis);
    use Family::*;
    let (n, m) = (a.degree, b.degree);
    let basis = a.basis;
    let gen = |family, degree| Generator::new(basis, family, degree);
    let keep = |c: i64, g: Generator| if c == 0 { None } else { Some((c, g)) };
    match (a.family, b.family) {
        (L, L) => keep(m - n, gen(L, m + n)),
        (L, H) => keep(m, gen(H, m + n)),
        (L, I) => keep(m - n, gen(I, m + n)),
        (L, J) => keep(m - n, gen(J, m + n)),
        (H, I) => match basis {
            Basis::Plain => Some((1, gen(I, m + n))),
            Basis::Bold => Some((1, gen(J, m + n))),
        },
        (H, J) => match basis {
            Basis::Plain => Some((-1, gen(J, m + n))),
            Basis::Bold => Some((-1, gen(I, m + n))),
        },
        (H, L) | (I, L) | (J, L) | (I, H) | (J, H) => {
            bracket_generators(b, a).map(|(c, g)| (-c, g))
        }
        // H-H, I-I, I-J, J-J pairs are absent from both tables.
        _ => None,
    }
}

/// The Lie bracket `[x, y]`, extended bilinearly from the generator table of
/// the common basis. Errors when `x` and `y` carry different bases.
pub fn bracket(x: &Element, y: &Element) -> Result<Element, Error> {
    if let (Some(a), Some(b)) = (x.basis(), y.basis()) {
        if a != b {
            return Err(Error::BasisMismatch { expected: a, found: b });
        }
    }
    let mut out = Element::zero();
    for (g1, c1) in x.iter() {
        for (g2, c2) in y.iter() {
            if let Some((k, g)) = bracket_generators(g1, g2) {
                let coeff = &(c1 * c2) * &GaussianRational::from_integer(k);
                out.add_term(g, coeff)?;
            }
        }
    }
    Ok(out)
}

impl Element {
    /// Image under the substitution `L_m -> Lb_m`, `H_m -> i*Hb_m`,
    /// `I_m -> Ib_m + i*Jb_m`, `J_m -> Ib_m - i*Jb_m`. Errors on bold input.
    pub fn to_bold(&self) -> Result<Element, Error> {
        if self.basis() == Some(Basis::Bold) {
            return Err(Error::BasisMismatch { expected: Basis::Plain, found: Basis::Bold });
        }
        let i = GaussianRational::i();
        let mut out = Element::zero();
        for (g, c) in self.iter() {
            let m = g.degree;
            match g.family {
                Family::L => out.add_term(Generator::bold(Family::L, m), c.clone())?,
                Family::H => out.add_term(Generator::bold(Family::H, m), c * &i)?,
                Family::I => {
                    out.add_term(Generator::bold(Family::I, m), c.clone())?;
                    out.add_term(Generator::bold(Family::J, m), c * &i)?;
                }
                Family::J => {
                    out.add_term(Generator::bold(Family::I, m), c.clone())?;
                    out.add_term(Generator::bold(Family::J, m), -&(c * &i))?;
                }
            }
        }
        Ok(out)
    }

    /// Inverse of `to_bold`: `Lb_m -> L_m`, `Hb_m -> -i*H_m`,
    /// `Ib_m -> (I_m + J_m)/2`, `Jb_m -> -i/2*I_m + i/2*J_m`.
    pub fn to_plain(&self) -> Result<Element, Error> {
        if self.basis() == Some(Basis::Plain) {
            return Err(Error::BasisMismatch { expected: Basis::Bold, found: Basis::Plain });
        }
        let i = GaussianRational::i();
        let half = GaussianRational::from_ratio(1, 2).expect("nonzero denominator");
        let half_i = &half * &i;
        let mut out = Element::zero();
        for (g, c) in self.iter() {
            let m = g.degree;
            match g.family {
                Family::L => out.add_term(Generator::plain(Family::L, m), c.clone())?,
                Family::H => out.add_term(Generator::plain(Family::H, m), -&(c * &i))?,
                Family::I => {
                    out.add_term(Generator::plain(Family::I, m), c * &half)?;
                    out.add_term(Generator::plain(Family::J, m), c * &half)?;
                }
                Family::J => {
                    out.add_term(Generator::plain(Family::I, m), -&(c * &half_i))?;
                    out.add_term(Generator::plain(Family::J, m), c * &half_i)?;
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gen(f: Family, m: i64) -> Element {
        Element::generator(Generator::plain(f, m))
    }

    fn bgen(f: Family, m: i64) -> Element {
        Element::generator(Generator::bold(f, m))
    }

    #[test]
    fn bracket_table_plain() {
        use Family::*;
        // [L_1, L_2] = (2-1) L_3
        assert_eq!(bracket(&gen(L, 1), &gen(L, 2)).unwrap(), gen(L, 3));
        // [L_2, H_3] = 3 H_5
        assert_eq!(
            bracket(&gen(L, 2), &gen(H, 3)).unwrap(),
            gen(H, 5).scale(&GaussianRational::from_integer(3))
        );
        // [H_1, J_2] = -J_3
        assert_eq!(bracket(&gen(H, 1), &gen(J, 2)).unwrap(), -&gen(J, 3));
        // I-J pairs are absent from the table.
        assert!(bracket(&gen(I, 1), &gen(J, 2)).unwrap().is_zero());
    }

    #[test]
    fn bracket_table_bold() {
        use Family::*;
        assert_eq!(bracket(&bgen(H, 1), &bgen(I, 2)).unwrap(), bgen(J, 3));
        assert_eq!(bracket(&bgen(H, 1), &bgen(J, 2)).unwrap(), -&bgen(I, 3));
    }

    #[test]
    fn bracket_of_mixed_bases_errors() {
        let e = bracket(&gen(Family::L, 0), &bgen(Family::L, 0));
        assert!(matches!(e, Err(Error::BasisMismatch { .. })));
    }

    #[test]
    fn bracket_with_zero_is_zero() {
        let x = &gen(Family::L, 2) + &gen(Family::I, -1);
        assert!(bracket(&x, &Element::zero()).unwrap().is_zero());
        assert!(bracket(&Element::zero(), &x).unwrap().is_zero());
    }

    #[test]
    fn basis_change_examples() {
        use Family::*;
        let i = GaussianRational::i();
        // I_2 -> Ib_2 + i Jb_2
        assert_eq!(
            gen(I, 2).to_bold().unwrap(),
            &bgen(I, 2) + &bgen(J, 2).scale(&i)
        );
        // H_0 -> i Hb_0
        assert_eq!(gen(H, 0).to_bold().unwrap(), bgen(H, 0).scale(&i));
        // Ib_2 -> (I_2 + J_2)/2
        let half = GaussianRational::from_ratio(1, 2).unwrap();
        assert_eq!(
            bgen(I, 2).to_plain().unwrap(),
            (&gen(I, 2) + &gen(J, 2)).scale(&half)
        );
        // Jb_2 -> -i/2 I_2 + i/2 J_2
        let half_i = &half * &i;
        assert_eq!(
            bgen(J, 2).to_plain().unwrap(),
            &gen(J, 2).scale(&half_i) - &gen(I, 2).scale(&half_i)
        );
    }

    #[test]
    fn basis_change_round_trip_example() {
        let x = &gen(Family::L, 7) - &gen(Family::J, -2).scale(&GaussianRational::from_integer(3));
        assert_eq!(x.to_bold().unwrap().to_plain().unwrap(), x);
    }

    #[test]
    fn basis_change_intertwines_bracket_example() {
        use Family::*;
        let lhs = bracket(&gen(H, 1), &gen(I, 2)).unwrap().to_bold().unwrap();
        let rhs = bracket(
            &gen(H, 1).to_bold().unwrap(),
            &gen(I, 2).to_bold().unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
        let expected = &bgen(I, 3) + &bgen(J, 3).scale(&GaussianRational::i());
        assert_eq!(lhs, expected);
    }

    #[test]
    fn mixed_basis_element_is_unrepresentable() {
        let mut x = gen(Family::L, 0);
        let err = x.add_term(Generator::bold(Family::I, 1), GaussianRational::one());
        assert!(matches!(err, Err(Error::BasisMismatch { .. })));
    }

    pub(crate) fn arb_element(basis: Basis, max_degree: i64) -> impl Strategy<Value = Element> {
        let term = (
            prop::sample::select(Family::ALL.to_vec()),
            -max_degree..=max_degree,
            -6i64..=6,
            1i64..=4,
            -3i64..=3,
        );
        prop::collection::vec(term, 0..5).prop_map(move |ts| {
            let mut e = Element::zero();
            for (f, d, num, den, im) in ts {
                let c = &GaussianRational::from_ratio(num, den).unwrap()
                    + &(&GaussianRational::i() * &GaussianRational::from_integer(im));
                e.add_term(Generator::new(basis, f, d), c).unwrap();
            }
            e
        })
    }

    proptest! {
        #[test]
        fn antisymmetry_plain(x in arb_element(Basis::Plain, 8), y in arb_element(Basis::Plain, 8)) {
            let xy = bracket(&x, &y).unwrap();
            let yx = bracket(&y, &x).unwrap();
            prop_assert_eq!(xy, -&yx);
        }

        #[test]
        fn antisymmetry_bold(x in arb_element(Basis::Bold, 8), y in arb_element(Basis::Bold, 8)) {
            let xy = bracket(&x, &y).unwrap();
            let yx = bracket(&y, &x).unwrap();
            prop_assert_eq!(xy, -&yx);
        }

        #[test]
        fn self_bracket_vanishes(x in arb_element(Basis::Plain, 8)) {
            prop_assert!(bracket(&x, &x).unwrap().is_zero());
        }

        #[test]
        fn jacobi_on_random_sparse_elements(
            x in arb_element(Basis::Plain, 6),
            y in arb_element(Basis::Plain, 6),
            z in arb_element(Basis::Plain, 6),
        ) {
            let a = bracket(&x, &bracket(&y, &z).unwrap()).unwrap();
            let b = bracket(&y, &bracket(&z, &x).unwrap()).unwrap();
            let c = bracket(&z, &bracket(&x, &y).unwrap()).unwrap();
            prop_assert!((&(&a + &b) + &c).is_zero());
        }

        #[test]
        fn to_bold_is_a_bracket_isomorphism(
            x in arb_element(Basis::Plain, 6),
            y in arb_element(Basis::Plain, 6),
        ) {
            let lhs = bracket(&x, &y).unwrap().to_bold().unwrap();
            let rhs = bracket(&x.to_bold().unwrap(), &y.to_bold().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn basis_round_trips(x in arb_element(Basis::Plain, 8)) {
            prop_assert_eq!(x.to_bold().unwrap().to_plain().unwrap(), x.clone());
        }

        #[test]
        fn bold_round_trips(x in arb_element(Basis::Bold, 8)) {
            prop_assert_eq!(x.to_plain().unwrap().to_bold().unwrap(), x.clone());
        }
    }
}
