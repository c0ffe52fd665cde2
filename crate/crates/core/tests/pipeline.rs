use calabi_core::diastasis::{b_transform, b_transform_inverse};
use calabi_core::immersion::{factor_immersion, verify_immersion};
use calabi_core::models::{catalog, get_model, ModelSpec};
use calabi_core::resolvability::{resolvability, validate_witness, Verdict};
use calabi_core::scalar::{rat, rat_int};
use calabi_core::series::text::{parse_bi, write_bi};

fn required(name: &str) -> ModelSpec {
    let spec = ModelSpec::new(name);
    match name {
        "hartogs-alpha" => spec.with("alpha", "2"),
        "hartogs-inv-pow" | "hartogs-one-minus-pow" => spec.with("p", "1/2"),
        "cartan" => spec.with("type", "1").with("n", "2").with("m", "1"),
        "cartan-hartogs" => spec.with("type", "1").with("n", "1").with("m", "1").with("mu", "1"),
        "fbh" => spec.with("n", "1").with("m", "1").with("mu", "1").with("nu", "0"),
        "taub-nut" => spec.with("m", "1/3"),
        "space-form" => spec.with("b", "-2"),
        _ => spec,
    }
}

#[test]
fn every_model_survives_text_round_trip() {
    for info in catalog() {
        let d = get_model(&required(info.name), 3).unwrap_or_else(|e| panic!("{}: {e}", info.name));
        assert!(d.is_hermitian(), "{}", info.name);
        assert_eq!(parse_bi(&write_bi(&d)).unwrap(), d, "{}", info.name);
    }
}

#[test]
fn b_transform_is_invertible_on_models() {
    for name in ["cp", "springer", "cigar", "phi-b"] {
        let d = get_model(&required(name), 4).unwrap();
        for b in [rat(1, 2), rat_int(-3)] {
            let t = b_transform(&d, &b).unwrap();
            assert_eq!(b_transform_inverse(&t, &b).unwrap(), d, "{name}, b={b}");
        }
    }
}

#[test]
fn verdicts_and_certificates_agree_across_catalog() {
    for info in catalog() {
        let d = get_model(&required(info.name), 3).unwrap();
        for b in [rat_int(-1), rat_int(0), rat_int(1)] {
            match resolvability(&d, &b, 3).unwrap() {
                Verdict::CertifiedNotResolvable { witness, .. } => {
                    let v = validate_witness(&d, &b, &witness).unwrap();
                    assert!(v < rat_int(0), "{} b={b}", info.name);
                }
                Verdict::ResolvableUpTo { .. } => {
                    let map = factor_immersion(&d, &b, 3).unwrap();
                    assert!(
                        verify_immersion(&map, &d, &b, 3).unwrap().is_ok(),
                        "{} b={b}",
                        info.name
                    );
                }
                Verdict::CertifiedResolvable { .. } => {}
            }
        }
    }
}
