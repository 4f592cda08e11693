//! Seeded property fuzzing with shrinking to a minimal counterexample.
//!
//! Each target checks an exact identity on randomly sampled inputs; the same
//! seed always produces the same samples and, on failure, the same shrunk
//! counterexample. The shrinker is generic over a failing predicate so it
//! can be exercised on deliberately broken maps in tests.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{bracket, Basis, Element, Family, Generator};
use crate::derivation::Derivation;
use crate::exprio::print_element;
use crate::scalar::GaussianRational;

/// Which identity to fuzz.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FuzzTarget {
    /// The cyclic bracket identity on random triples, both bases.
    Jacobi,
    /// The basis change intertwines brackets and round-trips.
    Isomorphism,
    /// Normal-form derivations satisfy the Leibniz law exactly.
    Leibniz,
}

impl std::str::FromStr for FuzzTarget {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jacobi" => Ok(FuzzTarget::Jacobi),
            "isomorphism" => Ok(FuzzTarget::Isomorphism),
            "leibniz" => Ok(FuzzTarget::Leibniz),
            other => Err(format!("unknown fuzz target {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FuzzConfig {
    pub target: FuzzTarget,
    /// Sampled degrees stay in `[-radius, radius]`.
    pub radius: i64,
    pub samples: u32,
    pub seed: u64,
}

/// A shrunk failing input, printed in element text.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FuzzReport {
    pub target: FuzzTarget,
    pub radius: i64,
    pub samples: u32,
    pub seed: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// Random small scalar: rational with small numerator and denominator, with
/// an occasional imaginary part.
pub fn sample_scalar(rng: &mut impl Rng) -> GaussianRational {
    let num = rng.gen_range(-5i64..=5);
    let den = rng.gen_range(1i64..=3);
    let re = GaussianRational::from_ratio(num, den).expect("positive denominator");
    if rng.gen_bool(0.3) {
        let im = rng.gen_range(-3i64..=3);
        &re + &(&GaussianRational::i() * &GaussianRational::from_integer(im))
    } else {
        re
    }
}

/// Random sparse element with up to `max_terms` terms and degrees in
/// `[-radius, radius]`.
pub fn sample_element(
    rng: &mut impl Rng,
    basis: Basis,
    radius: i64,
    max_terms: usize,
) -> Element {
    let n_terms = rng.gen_range(0..=max_terms);
    let mut e = Element::zero();
    for _ in 0..n_terms {
        let family = Family::ALL[rng.gen_range(0..4)];
        let degree = rng.gen_range(-radius..=radius);
        e.add_term(Generator::new(basis, family, degree), sample_scalar(rng))
            .expect("single basis");
    }
    e
}

/// Like `sample_element` but guaranteed nonzero.
pub fn sample_nonzero_element(
    rng: &mut impl Rng,
    basis: Basis,
    radius: i64,
    max_terms: usize,
) -> Element {
    loop {
        let e = sample_element(rng, basis, radius, max_terms);
        if !e.is_zero() {
            return e;
        }
    }
}

/// Random normal-form derivation with inner support in `[-radius, radius]`.
pub fn sample_derivation(rng: &mut impl Rng, radius: i64, max_terms: usize) -> Derivation {
    let inner = sample_element(rng, Basis::Plain, radius, max_terms);
    let outer = sample_scalar(rng);
    Derivation::new(inner, outer).expect("plain inner")
}

/// Runs the configured fuzz target. Exact arithmetic means a failure is a
/// genuine counterexample, never numerical noise.
pub fn run(config: &FuzzConfig) -> FuzzReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut failure: Option<Counterexample> = None;
    for _ in 0..config.samples {
        let found = match config.target {
            FuzzTarget::Jacobi => jacobi_sample(&mut rng, config.radius),
            FuzzTarget::Isomorphism => isomorphism_sample(&mut rng, config.radius),
            FuzzTarget::Leibniz => leibniz_sample(&mut rng, config.radius),
        };
        if let Some(cx) = found {
            failure = Some(cx);
            break;
        }
    }
    FuzzReport {
        target: config.target,
        radius: config.radius,
        samples: config.samples,
        seed: config.seed,
        pass: failure.is_none(),
        counterexample: failure,
    }
}

fn jacobi_defect(items: &[Element]) -> Element {
    let (x, y, z) = (&items[0], &items[1], &items[2]);
    let a = bracket(x, &bracket(y, z).expect("same basis")).expect("same basis");
    let b = bracket(y, &bracket(z, x).expect("same basis")).expect("same basis");
    let c = bracket(z, &bracket(x, y).expect("same basis")).expect("same basis");
    &(&a + &b) + &c
}

fn jacobi_sample(rng: &mut impl Rng, radius: i64) -> Option<Counterexample> {
    let basis = if rng.gen_bool(0.5) { Basis::Plain } else { Basis::Bold };
    let items = vec![
        sample_element(rng, basis, radius, 3),
        sample_element(rng, basis, radius, 3),
        sample_element(rng, basis, radius, 3),
    ];
    if jacobi_defect(&items).is_zero() {
        return None;
    }
    let shrunk = shrink_elements(items, |xs| !jacobi_defect(xs).is_zero());
    Some(Counterexample {
        detail: format!(
            "cyclic bracket identity fails: defect {}",
            print_element(&jacobi_defect(&shrunk))
        ),
        inputs: shrunk.iter().map(print_element).collect(),
    })
}

fn isomorphism_defect(items: &[Element]) -> bool {
    let (x, y) = (&items[0], &items[1]);
    let lhs = bracket(x, y).expect("plain").to_bold().expect("plain");
    let rhs = bracket(&x.to_bold().expect("plain"), &y.to_bold().expect("plain")).expect("bold");
    if lhs != rhs {
        return true;
    }
    x.to_bold().expect("plain").to_plain().expect("bold") != *x
}

fn isomorphism_sample(rng: &mut impl Rng, radius: i64) -> Option<Counterexample> {
    let items = vec![
        sample_element(rng, Basis::Plain, radius, 3),
        sample_element(rng, Basis::Plain, radius, 3),
    ];
    if !isomorphism_defect(&items) {
        return None;
    }
    let shrunk = shrink_elements(items, isomorphism_defect);
    Some(Counterexample {
        detail: "basis change fails to intertwine brackets or to round-trip".to_string(),
        inputs: shrunk.iter().map(print_element).collect(),
    })
}

fn leibniz_defect(d: &Derivation, items: &[Element]) -> bool {
    !d.leibniz_holds(&items[0], &items[1]).expect("plain elements")
}

fn leibniz_sample(rng: &mut impl Rng, radius: i64) -> Option<Counterexample> {
    let d = sample_derivation(rng, radius, 3);
    let items = vec![
        sample_element(rng, Basis::Plain, radius, 3),
        sample_element(rng, Basis::Plain, radius, 3),
    ];
    if !leibniz_defect(&d, &items) {
        return None;
    }
    let shrunk = shrink_elements(items, |xs| leibniz_defect(&d, xs));
    Some(Counterexample {
        detail: format!("Leibniz law fails for {}", d),
        inputs: shrunk.iter().map(print_element).collect(),
    })
}

/// Greedy deterministic shrinker: repeatedly drop terms, simplify
/// coefficients to 1, and pull degrees toward zero, keeping each mutation
/// only if the inputs still fail. Terminates because every accepted step
/// strictly decreases (term count, coefficient size, degree spread).
pub fn shrink_elements(
    mut items: Vec<Element>,
    fails: impl Fn(&[Element]) -> bool,
) -> Vec<Element> {
    debug_assert!(fails(&items));
    loop {
        let mut changed = false;
        // Drop whole terms.
        'outer: for idx in 0..items.len() {
            let gens: Vec<Generator> = items[idx].support().copied().collect();
            for g in gens {
                let mut candidate = items.clone();
                let c = candidate[idx].coeff(&g);
                candidate[idx].add_term(g, -&c).expect("same basis");
                if fails(&candidate) {
                    items = candidate;
                    changed = true;
                    break 'outer;
                }
            }
        }
        if changed {
            continue;
        }
        // Simplify coefficients to 1.
        'coeffs: for idx in 0..items.len() {
            let terms: Vec<(Generator, GaussianRational)> =
                items[idx].iter().map(|(g, c)| (*g, c.clone())).collect();
            for (g, c) in terms {
                if c.is_one() {
                    continue;
                }
                let mut candidate = items.clone();
                let delta = &GaussianRational::one() - &c;
                candidate[idx].add_term(g, delta).expect("same basis");
                if fails(&candidate) {
                    items = candidate;
                    changed = true;
                    break 'coeffs;
                }
            }
        }
        if changed {
            continue;
        }
        // Pull degrees toward zero.
        'degrees: for idx in 0..items.len() {
            let terms: Vec<(Generator, GaussianRational)> =
                items[idx].iter().map(|(g, c)| (*g, c.clone())).collect();
            for (g, c) in terms {
                if g.degree == 0 {
                    continue;
                }
                let closer = Generator::new(g.basis, g.family, g.degree - g.degree.signum());
                let mut candidate = items.clone();
                candidate[idx].add_term(g, -&c).expect("same basis");
                candidate[idx].add_term(closer, c.clone()).expect("same basis");
                if fails(&candidate) {
                    items = candidate;
                    changed = true;
                    break 'degrees;
                }
            }
        }
        if !changed {
            return items;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_targets_pass_with_the_reference_seed() {
        for target in [FuzzTarget::Jacobi, FuzzTarget::Isomorphism, FuzzTarget::Leibniz] {
            let report = run(&FuzzConfig { target, radius: 6, samples: 200, seed: 7 });
            assert!(report.pass, "{target:?} found a counterexample");
        }
    }

    #[test]
    fn fuzzing_is_deterministic() {
        let cfg = FuzzConfig { target: FuzzTarget::Jacobi, radius: 6, samples: 50, seed: 42 };
        let a = serde_json::to_string(&run(&cfg)).unwrap();
        let b = serde_json::to_string(&run(&cfg)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn shrinker_finds_a_minimal_failing_input() {
        // Predicate: "some I-family term is present". The minimal failing
        // input should be a single unit I term at degree 0.
        let mut big = Element::zero();
        big.add_term(
            Generator::plain(Family::I, 5),
            GaussianRational::from_parts(3, 2),
        )
        .unwrap();
        big.add_term(Generator::plain(Family::L, -4), GaussianRational::from_integer(7))
            .unwrap();
        big.add_term(Generator::plain(Family::J, 2), GaussianRational::from_integer(1))
            .unwrap();
        let fails =
            |xs: &[Element]| xs[0].support().any(|g| g.family == Family::I);
        let shrunk = shrink_elements(vec![big], fails);
        assert_eq!(shrunk.len(), 1);
        assert_eq!(print_element(&shrunk[0]), "I[0]");
    }

    #[test]
    fn shrinker_respects_the_predicate() {
        // A broken window map: L_0 -> I_0 violates Leibniz on (L_1, L_-1).
        use crate::derivation::{LinearMapOnWindow, Window};
        let w = Window::new(4, 2).unwrap();
        let mut map = LinearMapOnWindow::new(w);
        map.set_image(
            Generator::plain(Family::L, 0),
            Element::generator(Generator::plain(Family::I, 0)),
        )
        .unwrap();
        let x = Element::generator(Generator::plain(Family::L, 1));
        let y = Element::generator(Generator::plain(Family::L, -1));
        let fails = |xs: &[Element]| {
            matches!(map.leibniz_holds(&xs[0], &xs[1]), Ok(false))
        };
        assert!(fails(&[x.clone(), y.clone()]));
        let shrunk = shrink_elements(vec![x, y], fails);
        // Both arguments must keep one term for the pair to bracket onto L_0.
        assert_eq!(shrunk[0].support_size(), 1);
        assert_eq!(shrunk[1].support_size(), 1);
    }
}
