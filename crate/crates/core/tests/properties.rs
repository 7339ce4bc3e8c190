mod common;

use proptest::prelude::*;

fn holds(seed: u64, name: &str) -> Result<(), TestCaseError> {
    let c = common::case(seed);
    common::check(&c, name).map(|_| ()).map_err(TestCaseError::fail)
}

macro_rules! property {
    ($test:ident, $name:literal) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]
            #[test]
            fn $test(seed in any::<u64>()) {
                holds(seed, $name)?;
            }
        }
    };
}

property!(contacts_are_ultrametric, "ultrametric");
property!(q_increases_up_the_tree, "monotonicity");
property!(lojasiewicz_from_tangential_components, "tangential");
property!(tree_determines_germ, "tree-roundtrip");
property!(polar_quotient_bounded_by_q0, "quotient-bound");
property!(two_transversal_probes_attain_q0, "two-probe-max");
property!(transversal_probe_attains_l0, "transversal-exponent");
property!(unitangent_probe_exponents, "unitangent-strictness");
property!(multiplicities_sum_to_intersection, "sum-rule");
property!(zero_multiplicity_characterized, "zero-multiplicity");

#[test]
fn every_property_applies_somewhere() {
    for name in common::PROPERTIES {
        let ran = (0..300).filter(|&s| common::check(&common::case(s), name) == Ok(true)).count();
        assert!(ran >= 30, "{name} ran on only {ran} of 300 germs");
    }
}
