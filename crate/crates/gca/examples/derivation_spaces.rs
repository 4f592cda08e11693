//! Window-truncated derivation spaces: for each degree d, the homogeneous
//! degree-d maps satisfying the Leibniz identity on all fully resolvable
//! generator pairs form a nullspace over Q(i); restricted to the certified
//! interior it matches span{ad(L_d), ad(H_d), ad(I_d), ad(J_d)}, plus the
//! outer derivation D at degree 0.
//!
//! Run with: `cargo run --release -p gca --example derivation_spaces`

use gca::{derivation_space, print_element, Window};

fn main() {
    let window = Window::new(10, 5).unwrap();
    println!("window radius {}, interior {}", window.radius(), window.interior());
    println!();
    println!("degree | window dim | interior dim | matches ad-span | contains D");
    for degree in [-3i64, -2, -1, 0, 1, 2, 3] {
        let space = derivation_space(&window, degree).unwrap();
        println!(
            "{degree:6} | {:10} | {:12} | {:15} | {}",
            space.window_dimension(),
            space.interior_dimension,
            space.matches_known_span,
            match space.contains_outer_d {
                Some(true) => "yes",
                Some(false) => "NO",
                None => "-",
            }
        );
    }

    println!();
    println!("== the degree-0 basis, by images on a few generators ==");
    let space = derivation_space(&window, 0).unwrap();
    for (idx, map) in space.basis.iter().enumerate() {
        let images: Vec<String> = map
            .images()
            .take(3)
            .map(|(g, img)| format!("{} -> {}", g, print_element(img)))
            .collect();
        println!("basis[{idx}]: {} ...", images.join(", "));
    }
}
