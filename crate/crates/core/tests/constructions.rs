use permbound_core::construct::{
    soluble_transitive_alt, two_orbit_pprime, PropertyCertificate, Strategy, TwoOrbitOutcome,
};

#[test]
fn soluble_transitive_alt_up_to_64() {
    for n in 3..=64 {
        let c = soluble_transitive_alt(n).unwrap();
        let cert = PropertyCertificate::of(&c);
        assert!(cert.is_soluble_transitive_alt(n), "n={n}: {cert:?}");
        assert_eq!(c.uses_two_mod_four_gap, n % 4 == 2, "n={n}");
        assert_eq!(c.strategy == Strategy::Fallback, n % 4 == 2, "n={n}");
    }
    assert!(soluble_transitive_alt(2).is_err());
}

#[test]
fn two_orbit_up_to_64() {
    let mut infeasible = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        for n in 1..=64 {
            for in_alt in [false, true] {
                match two_orbit_pprime(n, p, in_alt).unwrap() {
                    TwoOrbitOutcome::Witness(c) => {
                        let cert = PropertyCertificate::of(&c);
                        assert!(
                            cert.is_two_orbit_pprime(n, p, in_alt),
                            "n={n} p={p} {cert:?}"
                        );
                    }
                    TwoOrbitOutcome::Infeasible(inf) => {
                        assert!(!inf.rejected.is_empty());
                        infeasible.push((n, p, in_alt));
                    }
                }
            }
        }
    }
    assert_eq!(infeasible, vec![(3, 3, true)]);
}
