//! Tour of the element grammar: parsing, canonical printing, and the
//! positioned errors.
//!
//! Run with: `cargo run -p gca --example parsing`

use gca::{parse_element, print_element};

fn main() {
    println!("== parsing and canonical printing ==");
    for text in [
        "2*L[3] + (1+1i)*I[-2] - J[0]",
        "L[1] - L[1]",
        "  3/4 * H[ -2 ]   + i*I[0]",
        "-J[3]",
        "Ib[2] + (0-1i)*Jb[2]",
    ] {
        let e = parse_element(text).unwrap();
        println!("{text:40} -> {}", print_element(&e));
    }

    println!();
    println!("== like terms combine; printing is order-canonical ==");
    let a = parse_element("J[0] + L[3] + L[3] + I[-1]").unwrap();
    let b = parse_element("I[-1] + 2*L[3] + J[0]").unwrap();
    assert_eq!(a, b);
    println!("both spellings print as: {}", print_element(&a));

    println!();
    println!("== errors carry a byte offset and the expected tokens ==");
    for bad in ["L[2", "(1+2)*L[0]", "Ib[2] + L[0]", "3", "1/0*L[0]"] {
        match parse_element(bad) {
            Ok(_) => unreachable!("{bad} should not parse"),
            Err(e) => println!("{bad:15} -> {e}"),
        }
    }
}
