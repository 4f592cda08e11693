//! Bracket arithmetic in both bases and the basis-change isomorphism.
//!
//! Run with: `cargo run -p gca --example brackets`

use gca::{bracket, parse_element, print_element, Element, Family, Generator};

fn p(f: Family, m: i64) -> Element {
    Element::generator(Generator::plain(f, m))
}

fn b(f: Family, m: i64) -> Element {
    Element::generator(Generator::bold(f, m))
}

fn show(label: &str, x: &Element, y: &Element) {
    let result = bracket(x, y).unwrap();
    println!("{label}: [{}, {}] = {}", print_element(x), print_element(y), print_element(&result));
}

fn main() {
    println!("== plain-basis bracket table ==");
    show("L-L", &p(Family::L, 1), &p(Family::L, 2));
    show("L-H", &p(Family::L, 2), &p(Family::H, 3));
    show("H-I", &p(Family::H, 1), &p(Family::I, 2));
    show("H-J", &p(Family::H, 1), &p(Family::J, 2));
    show("I-J (absent)", &p(Family::I, 1), &p(Family::J, 2));

    println!();
    println!("== bold-basis bracket table ==");
    show("Hb-Ib", &b(Family::H, 1), &b(Family::I, 2));
    show("Hb-Jb", &b(Family::H, 1), &b(Family::J, 2));

    println!();
    println!("== brackets extend bilinearly to sparse elements ==");
    let x = parse_element("2*L[3] + (1+1i)*I[-2] - J[0]").unwrap();
    let y = parse_element("H[1] - 1/2*L[0]").unwrap();
    show("sparse", &x, &y);

    println!();
    println!("== the substitution between the bases is a bracket isomorphism ==");
    let (h, i) = (p(Family::H, 1), p(Family::I, 2));
    let lhs = bracket(&h, &i).unwrap().to_bold().unwrap();
    let rhs = bracket(&h.to_bold().unwrap(), &i.to_bold().unwrap()).unwrap();
    println!("to_bold([H[1], I[2]])            = {}", print_element(&lhs));
    println!("[to_bold(H[1]), to_bold(I[2])]   = {}", print_element(&rhs));
    assert_eq!(lhs, rhs);

    let x = parse_element("L[7] - 3*J[-2]").unwrap();
    let round = x.to_bold().unwrap().to_plain().unwrap();
    println!("to_plain(to_bold({})) = {}", print_element(&x), print_element(&round));
    assert_eq!(x, round);

    println!();
    println!("== antisymmetry and the cyclic identity hold exactly ==");
    let z = parse_element("I[1] + (0+2i)*H[-1]").unwrap();
    let xy = bracket(&x, &y).unwrap();
    let yx = bracket(&y, &x).unwrap();
    assert_eq!(xy, -&yx);
    let j = &(&bracket(&x, &bracket(&y, &z).unwrap()).unwrap()
        + &bracket(&y, &bracket(&z, &x).unwrap()).unwrap())
        + &bracket(&z, &bracket(&x, &y).unwrap()).unwrap();
    println!("Jacobi defect on three sparse elements: {}", print_element(&j));
    assert!(j.is_zero());
}
