//! 2-local instances and the constructive extraction of a derivation:
//! the round trip from a known derivation, the correction step at
//! I[0]+J[0], and the rejection of inconsistent tables.
//!
//! Run with: `cargo run -p gca --example extraction`

use gca::report::{load_instance, save_instance};
use gca::twolocal::{anchor_i0_j0, anchor_l0, anchor_l1, extract_derivation, TwoLocalInstance};
use gca::{parse_element, Derivation, Element, Family, Generator, GaussianRational, Window};

fn p(f: Family, m: i64) -> Element {
    Element::generator(Generator::plain(f, m))
}

fn main() {
    let w = Window::new(12, 6).unwrap();

    println!("== round trip: a table induced by ad(L[1]) + D ==");
    let d = Derivation::new(p(Family::L, 1), GaussianRational::one()).unwrap();
    let points = vec![
        anchor_l0(),
        anchor_l1(),
        anchor_i0_j0(),
        p(Family::H, 2),
        p(Family::I, -1),
    ];
    let inst = TwoLocalInstance::induced_by(&d, points, w).unwrap();
    for (point, value) in inst.table() {
        println!("  table: {point} -> {value}");
    }
    let extracted = extract_derivation(&inst).unwrap();
    println!("extracted: {extracted}");
    assert_eq!(extracted, d);

    println!();
    println!("== the correction step: ad(H[0]) leaves no trace at the L anchors ==");
    let d = Derivation::ad(p(Family::H, 0)).unwrap();
    let inst = TwoLocalInstance::induced_by(
        &d,
        vec![anchor_l0(), anchor_l1(), anchor_i0_j0()],
        w,
    )
    .unwrap();
    println!("  anchor values: all zero except I[0]+J[0] -> {}", inst.value_at(&anchor_i0_j0()).unwrap());
    let extracted = extract_derivation(&inst).unwrap();
    println!("extracted: {extracted} (recovered purely from the residual)");
    assert_eq!(extracted, d);

    println!();
    println!("== instances travel as JSON documents ==");
    let json = save_instance(&inst);
    println!("{json}");
    let reloaded = load_instance(&json).unwrap();
    assert_eq!(extract_derivation(&reloaded).unwrap(), d);

    println!();
    println!("== inconsistent tables are rejected, never silently extracted ==");
    let bad = TwoLocalInstance::new(
        w,
        vec![
            (anchor_l0(), Element::zero()),
            (anchor_l1(), Element::zero()),
            (anchor_i0_j0(), p(Family::H, 3)),
        ],
    )
    .unwrap();
    println!("  I[0]+J[0] -> H[3]: {}", extract_derivation(&bad).unwrap_err());

    let bad = TwoLocalInstance::new(
        w,
        vec![
            (anchor_l0(), Element::zero()),
            (anchor_l1(), Element::zero()),
            (anchor_i0_j0(), Element::zero()),
            (p(Family::L, 2), parse_element("L[3]").unwrap()),
        ],
    )
    .unwrap();
    println!("  zero anchors but L[2] -> L[3]: {}", extract_derivation(&bad).unwrap_err());
}
