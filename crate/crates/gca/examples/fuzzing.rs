//! Seeded property fuzzing of the exact identities, and the shrinker that
//! reduces a failing input to a minimal counterexample.
//!
//! Run with: `cargo run -p gca --example fuzzing`

use gca::derivation::LinearMapOnWindow;
use gca::fuzz::{run, shrink_elements, FuzzConfig, FuzzTarget};
use gca::{print_element, Element, Family, Generator, Window};

fn main() {
    println!("== seeded fuzzing: exactness makes these exact identity checks ==");
    for target in [FuzzTarget::Jacobi, FuzzTarget::Isomorphism, FuzzTarget::Leibniz] {
        let report = run(&FuzzConfig { target, radius: 6, samples: 500, seed: 7 });
        println!(
            "{:?}: {} samples, seed {} -> {}",
            report.target,
            report.samples,
            report.seed,
            if report.pass { "pass" } else { "FAIL" }
        );
        assert!(report.pass);
    }

    println!();
    println!("== the shrinker, demonstrated on a deliberately broken map ==");
    // The map L[0] -> I[0] (zero elsewhere) is not a derivation; feed the
    // shrinker two bloated arguments witnessing the Leibniz failure and
    // watch it carve them down.
    let w = Window::new(6, 3).unwrap();
    let mut broken = LinearMapOnWindow::new(w);
    broken
        .set_image(
            Generator::plain(Family::L, 0),
            Element::generator(Generator::plain(Family::I, 0)),
        )
        .unwrap();
    let x = gca::parse_element("3*L[1] + H[2] - 2*I[-3]").unwrap();
    let y = gca::parse_element("L[-1] + 5*J[3]").unwrap();
    let fails = |xs: &[Element]| matches!(broken.leibniz_holds(&xs[0], &xs[1]), Ok(false));
    assert!(fails(&[x.clone(), y.clone()]));
    println!("start:  x = {}, y = {}", print_element(&x), print_element(&y));
    let shrunk = shrink_elements(vec![x, y], fails);
    println!("shrunk: x = {}, y = {}", print_element(&shrunk[0]), print_element(&shrunk[1]));
}
