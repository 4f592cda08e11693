//! Witness solving: the affine space of derivations attaining prescribed
//! values at two prescribed points, as a canonical particular solution plus
//! a homogeneous basis.
//!
//! Run with: `cargo run -p gca --example witnesses`

use gca::{witness_solve, Derivation, Element, Family, Generator, Window};

fn p(f: Family, m: i64) -> Element {
    Element::generator(Generator::plain(f, m))
}

fn main() {
    let w = Window::new(8, 4).unwrap();

    println!("== a witness space constructed from a known derivation ==");
    let d = Derivation::ad(p(Family::L, 1)).unwrap();
    let (x, y) = (p(Family::L, 2), p(Family::H, 2));
    let ws = witness_solve(&x, &d.apply(&x).unwrap(), &y, &d.apply(&y).unwrap(), &w).unwrap();
    println!("constraints: d(L[2]) = {}, d(H[2]) = {}", d.apply(&x).unwrap(), d.apply(&y).unwrap());
    println!("particular: {}", ws.particular);
    println!("homogeneous dimension: {}", ws.dimension());
    println!("contains ad(L[1]): {}", ws.contains(&d));
    assert!(ws.contains(&d));

    println!();
    println!("== zero values at the anchors leave exactly ad(H[0]) and D free ==");
    let ws = witness_solve(&p(Family::L, 0), &Element::zero(), &p(Family::L, 1), &Element::zero(), &w)
        .unwrap();
    println!("particular: {}", ws.particular);
    for d in &ws.homogeneous_basis {
        println!("  free direction: {}", d);
    }

    println!();
    println!("== unreachable values are infeasible, not approximated ==");
    let x = &p(Family::I, 0) + &p(Family::J, 0);
    // Every derivation maps I[0]+J[0] into the I/J families, so H[3] is
    // unreachable.
    match witness_solve(&x, &p(Family::H, 3), &p(Family::L, 0), &Element::zero(), &w) {
        Err(e) => println!("d(I[0]+J[0]) = H[3]: {e}"),
        Ok(_) => unreachable!(),
    }
}
