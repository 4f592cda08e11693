//! Derivations in the normal form `ad(w) + lambda*D`, the degree window used
//! to truncate the infinite algebra, and exact Leibniz checking.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{bracket, Basis, Element, Family, Generator};
use crate::error::Error;
use crate::scalar::GaussianRational;

/// A finite degree range `[-radius, radius]` together with a certified
/// interior `[-interior, interior]`.
///
/// Solvers impose constraints only where they are fully resolvable inside
/// the window, and closed-form comparisons are made after restriction to the
/// interior, which quarantines boundary artifacts of the truncation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Window {
    radius: i64,
    interior: i64,
}

impl Window {
    /// Requires `1 <= interior <= radius/2`.
    pub fn new(radius: i64, interior: i64) -> Result<Self, Error> {
        if radius < 1 || interior < 1 || 2 * interior > radius {
            return Err(Error::InvalidWindow { radius, interior });
        }
        Ok(Window { radius, interior })
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn interior(&self) -> i64 {
        self.interior
    }

    pub fn contains_degree(&self, d: i64) -> bool {
        d.abs() <= self.radius
    }

    pub fn interior_contains_degree(&self, d: i64) -> bool {
        d.abs() <= self.interior
    }

    pub fn contains_element(&self, x: &Element) -> bool {
        x.supported_within(self.radius)
    }

    pub fn interior_contains_element(&self, x: &Element) -> bool {
        x.supported_within(self.interior)
    }

    /// All in-window plain generators, in canonical order.
    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        Family::ALL
            .into_iter()
            .flat_map(move |f| (-self.radius..=self.radius).map(move |m| Generator::plain(f, m)))
    }

    /// All interior plain generators, in canonical order.
    pub fn interior_generators(&self) -> impl Iterator<Item = Generator> + '_ {
        Family::ALL
            .into_iter()
            .flat_map(move |f| (-self.interior..=self.interior).map(move |m| Generator::plain(f, m)))
    }
}

/// The outer derivation `D`: kills the L and H families and fixes I and J
/// pointwise. Errors on bold input.
pub fn outer_d(y: &Element) -> Result<Element, Error> {
    if y.basis() == Some(Basis::Bold) {
        return Err(Error::BasisMismatch { expected: Basis::Plain, found: Basis::Bold });
    }
    Element::from_terms(
        y.iter()
            .filter(|(g, _)| matches!(g.family, Family::I | Family::J))
            .map(|(g, c)| (*g, c.clone())),
    )
}

/// A derivation in normal form: `ad(inner) + outer * D`, with `inner` a
/// plain-basis element.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    inner: Element,
    outer: GaussianRational,
}

impl Derivation {
    /// Errors if `inner` is a bold-basis element.
    pub fn new(inner: Element, outer: GaussianRational) -> Result<Self, Error> {
        if inner.basis() == Some(Basis::Bold) {
            return Err(Error::BasisMismatch { expected: Basis::Plain, found: Basis::Bold });
        }
        Ok(Derivation { inner, outer })
    }

    /// The inner derivation `ad(w)`.
    pub fn ad(w: Element) -> Result<Self, Error> {
        Derivation::new(w, GaussianRational::zero())
    }

    /// The pure outer derivation `lambda * D`.
    pub fn outer(lambda: GaussianRational) -> Self {
        Derivation { inner: Element::zero(), outer: lambda }
    }

    pub fn zero() -> Self {
        Derivation { inner: Element::zero(), outer: GaussianRational::zero() }
    }

    pub fn inner(&self) -> &Element {
        &self.inner
    }

    pub fn outer_coeff(&self) -> &GaussianRational {
        &self.outer
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero() && self.outer.is_zero()
    }

    /// `[inner, y] + outer * D(y)`. Errors on bold input.
    pub fn apply(&self, y: &Element) -> Result<Element, Error> {
        let ad_part = bracket(&self.inner, y)?;
        let d_part = outer_d(y)?.scale(&self.outer);
        Ok(&ad_part + &d_part)
    }

    /// Exact Leibniz check `d([x,y]) = [d(x),y] + [x,d(y)]`.
    ///
    /// Always true for the normal form; kept as a runnable oracle.
    pub fn leibniz_holds(&self, x: &Element, y: &Element) -> Result<bool, Error> {
        let lhs = self.apply(&bracket(x, y)?)?;
        let rhs = &bracket(&self.apply(x)?, y)? + &bracket(x, &self.apply(y)?)?;
        Ok(lhs == rhs)
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation {
            inner: &self.inner + &other.inner,
            outer: &self.outer + &other.outer,
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Derivation {
        Derivation { inner: self.inner.scale(c), outer: &self.outer * c }
    }

    pub fn neg(&self) -> Derivation {
        Derivation { inner: -&self.inner, outer: -&self.outer }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.inner.is_zero(), self.outer.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "ad({})", self.inner),
            (true, false) => write_outer(f, &self.outer),
            (false, false) => {
                write!(f, "ad({}) + ", self.inner)?;
                write_outer(f, &self.outer)
            }
        }
    }
}

fn write_outer(f: &mut fmt::Formatter<'_>, lambda: &GaussianRational) -> fmt::Result {
    if lambda.is_one() {
        write!(f, "D")
    } else {
        write!(f, "{}*D", lambda)
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A linear self-map of the window span, given by its images on in-window
/// generators. Missing entries are zero; stored images are plain-basis
/// elements supported inside the window.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMapOnWindow {
    window: Window,
    images: BTreeMap<Generator, Element>,
}

impl LinearMapOnWindow {
    /// The zero map on `window`.
    pub fn new(window: Window) -> Self {
        LinearMapOnWindow { window, images: BTreeMap::new() }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    /// Sets the image of an in-window generator. The image must be a plain
    /// element supported inside the window.
    pub fn set_image(&mut self, g: Generator, image: Element) -> Result<(), Error> {
        if g.basis == Basis::Bold || image.basis() == Some(Basis::Bold) {
            return Err(Error::BasisMismatch { expected: Basis::Plain, found: Basis::Bold });
        }
        if !self.window.contains_degree(g.degree) {
            return Err(Error::OutOfWindow { degree: g.degree, radius: self.window.radius() });
        }
        if let Some(d) = image.max_abs_degree() {
            if d > self.window.radius() {
                return Err(Error::OutOfWindow { degree: d, radius: self.window.radius() });
            }
        }
        if image.is_zero() {
            self.images.remove(&g);
        } else {
            self.images.insert(g, image);
        }
        Ok(())
    }

    pub fn from_images<T>(window: Window, images: T) -> Result<Self, Error>
    where
        T: IntoIterator<Item = (Generator, Element)>,
    {
        let mut map = LinearMapOnWindow::new(window);
        for (g, image) in images {
            map.set_image(g, image)?;
        }
        Ok(map)
    }

    /// The image of an in-window generator (zero when unset).
    pub fn image(&self, g: &Generator) -> Result<Element, Error> {
        if !self.window.contains_degree(g.degree) {
            return Err(Error::OutOfWindow { degree: g.degree, radius: self.window.radius() });
        }
        Ok(self.images.get(g).cloned().unwrap_or_else(Element::zero))
    }

    /// Nonzero images in canonical generator order.
    pub fn images(&self) -> impl Iterator<Item = (&Generator, &Element)> {
        self.images.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    /// Linear extension to window-supported elements; `OutOfWindow` when the
    /// argument leaves the window.
    pub fn apply(&self, x: &Element) -> Result<Element, Error> {
        let mut out = Element::zero();
        for (g, c) in x.iter() {
            let image = self.image(g)?;
            out = &out + &image.scale(c);
        }
        Ok(out)
    }

    /// Exact Leibniz check for the stored map. Requires `x`, `y` and `[x,y]`
    /// to be window-supported (all images are in-window by construction);
    /// otherwise the check is not decidable at this radius and the result is
    /// `OutOfWindow`.
    pub fn leibniz_holds(&self, x: &Element, y: &Element) -> Result<bool, Error> {
        let xy = bracket(x, y)?;
        let lhs = self.apply(&xy)?;
        let rhs = &bracket(&self.apply(x)?, y)? + &bracket(x, &self.apply(y)?)?;
        Ok(lhs == rhs)
    }
}
