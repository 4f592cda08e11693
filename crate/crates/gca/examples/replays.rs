//! Running all five replay families and reading their reports.
//!
//! Each replay recomputes a step of the 2-local analysis as a finite linear
//! computation and checks it exactly against its closed form.
//!
//! Run with: `cargo run -p gca --example replays`

use gca::replay::{replay_31i, replay_31ii, replay_32, replay_33, replay_34, replay_35};
use gca::report::ReplayReport;
use gca::{parse_element, Window};

fn show(r: &ReplayReport) {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let dims: Vec<String> = r.dimensions.iter().map(|(k, v)| format!("{k}={v}")).collect();
    println!(
        "replay {:5} [{}] {} {}",
        r.check,
        params.join(", "),
        if r.pass { "PASS" } else { "FAIL" },
        dims.join(", "),
    );
    if let Some(case) = &r.case {
        println!("        case {case}");
    }
}

fn main() {
    println!("== 3.1i: annihilators of single L generators ==");
    let w = Window::new(14, 7).unwrap();
    for i in [-3i64, 0, 3] {
        show(&replay_31i(i, &w).unwrap());
    }

    println!();
    println!("== 3.1ii: the I[0]+J[0] annihilator eliminates the outer coefficient ==");
    show(&replay_31ii(&Window::new(6, 3).unwrap()).unwrap());

    println!();
    println!("== 3.2: zero anchors force zero at every L[i] ==");
    let w = Window::new(14, 7).unwrap();
    for i in [-3i64, 0, 5] {
        show(&replay_32(i, &w).unwrap());
    }

    println!();
    println!("== 3.3: possible values collapse to the two-parameter family ==");
    let w = Window::new(24, 12).unwrap();
    let x = parse_element("I[2] + J[5]").unwrap();
    show(&replay_33(&x, Some(&[7, 9, 11]), &w).unwrap());
    show(&replay_33(&x, None, &w).unwrap());
    // An L-only element has an empty family, so everything collapses to 0.
    show(&replay_33(&parse_element("L[3]").unwrap(), None, &w).unwrap());

    println!();
    println!("== 3.4: the probe elements L[p]+I[2p]+J[2p] ==");
    let w = Window::new(14, 7).unwrap();
    for p in [-1i64, 1, 2] {
        show(&replay_34(p, &w).unwrap());
    }

    println!();
    println!("== 3.5: the value at arbitrary x is forced to zero, by case ==");
    let w = Window::new(48, 24).unwrap();
    for x in ["2*L[3] + H[1]", "H[2] + J[1]", "H[0] + I[2]", "I[1] + J[-1]"] {
        show(&replay_35(&parse_element(x).unwrap(), None, &w).unwrap());
    }
}
