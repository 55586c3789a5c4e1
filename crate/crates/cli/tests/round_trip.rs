use proptest::prelude::*;
use weyl_cli::expr::{format_element, parse_expression};
use weyl_core::algebra::Element;
use weyl_core::sample::{Sampler, FAMILIES};
use weyl_core::Signature;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_inverts_format(seed in any::<u64>(), fam in 0usize..5, terms in 0usize..5) {
        let sig = Signature::standard(FAMILIES[fam]).unwrap();
        let mut s = Sampler::new(seed);
        let e = Element::from_terms((0..terms).map(|_| (s.monomial(&sig), s.coefficient())));
        let text = format_element(&sig, &e);
        prop_assert_eq!(parse_expression(&sig, &text).unwrap(), e);
    }

    #[test]
    fn format_is_stable(seed in any::<u64>(), fam in 0usize..5) {
        let sig = Signature::standard(FAMILIES[fam]).unwrap();
        let mut s = Sampler::new(seed);
        let e = Element::from_terms((0..3).map(|_| (s.monomial(&sig), s.coefficient())));
        let text = format_element(&sig, &e);
        let again = format_element(&sig, &parse_expression(&sig, &text).unwrap());
        prop_assert_eq!(text, again);
    }
}
