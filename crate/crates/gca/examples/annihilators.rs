//! Annihilator spaces, joint annihilators, the separating set, and the
//! center check that underpins the uniqueness of inner parts.
//!
//! Run with: `cargo run -p gca --example annihilators`

use gca::solver::{center_check, derivation_spans_equal};
use gca::twolocal::{anchor_i0_j0, anchor_l0, anchor_l1};
use gca::{annihilator, joint_annihilator, Derivation, Element, Family, Generator, GaussianRational, Window};

fn p(f: Family, m: i64) -> Element {
    Element::generator(Generator::plain(f, m))
}

fn main() {
    let w = Window::new(8, 4).unwrap();

    println!("== annihilator of L[2] at radius 8 ==");
    let basis = annihilator(&p(Family::L, 2), &w).unwrap();
    for d in &basis {
        println!("  {}", d);
    }
    println!("dimension {}", basis.len());
    let expected = vec![
        Derivation::ad(p(Family::L, 2)).unwrap(),
        Derivation::ad(p(Family::H, 0)).unwrap(),
        Derivation::ad(p(Family::I, 2)).unwrap(),
        Derivation::ad(p(Family::J, 2)).unwrap(),
        Derivation::outer(GaussianRational::one()),
    ];
    assert!(derivation_spans_equal(&basis, &expected));

    println!();
    println!("== annihilator of I[0]+J[0]: the outer coefficient is forced out ==");
    let basis = annihilator(&anchor_i0_j0(), &w).unwrap();
    println!(
        "dimension {} = 1 + 2*(2N+1) at N = {}; every member has outer coefficient 0: {}",
        basis.len(),
        w.radius(),
        basis.iter().all(|d| d.outer_coeff().is_zero())
    );

    println!();
    println!("== joint annihilators: the separating set ==");
    let w12 = Window::new(12, 6).unwrap();
    let two = joint_annihilator(&[anchor_l0(), anchor_l1()], &w12).unwrap();
    println!("ann(L[0]) and ann(L[1]) intersect in dimension {}:", two.len());
    for d in &two {
        println!("  {}", d);
    }
    let three = joint_annihilator(&[anchor_l0(), anchor_l1(), anchor_i0_j0()], &w12).unwrap();
    println!(
        "adding I[0]+J[0] cuts the kernel to dimension {} - a derivation is pinned by its values on the three anchors",
        three.len()
    );
    assert!(three.is_empty());

    println!();
    println!("== the center is trivial on every window ==");
    for (radius, interior) in [(2, 1), (8, 4)] {
        let w = Window::new(radius, interior).unwrap();
        let center = center_check(&w);
        println!("radius {radius}: center basis size {}", center.len());
        assert!(center.is_empty());
    }
}
