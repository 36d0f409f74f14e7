use cforge_core::cover::{
    branched_cover, infect, one_over, surgery_coefficient, Affine, CoverError, IndexRange, Infection, PatternSpec,
    SurgeryDesc, WordTemplate,
};
use cforge_core::groupcalc::abelianization;
use cforge_core::knotlib::{closed_braid, determinant, torus_braid, BraidWord, KnotExpr};
use cforge_core::tangle::Fraction;
use cforge_testkit::{continued_fraction_pair, seifert_signature_det};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn companions() -> Vec<KnotExpr> {
    vec![
        KnotExpr::Unknot,
        KnotExpr::Torus(2, 3),
        KnotExpr::Torus(2, 5),
        KnotExpr::Torus(3, 4),
        KnotExpr::mirror(KnotExpr::Torus(2, 3)),
        KnotExpr::Twist(2),
        KnotExpr::BraidClosure(BraidWord::new(3, vec![1, -2, 1, -2]).unwrap()),
    ]
}

#[test]
fn p_n_coefficients() {
    let p = PatternSpec::p_n();
    for k in companions() {
        for n in 1..=100 {
            let d = branched_cover(&p, &k, n).unwrap();
            assert_eq!(d.coefficient, Fraction::new(1, n));
            assert_eq!(d.knot, KnotExpr::sum(k.clone(), k.clone()));
        }
    }
}

#[test]
fn q_n_of_unknot_is_trefoil_surgery() {
    let q = PatternSpec::q_n();
    for n in 1..=100 {
        let d = branched_cover(&q, &KnotExpr::Unknot, n).unwrap();
        assert_eq!(d, SurgeryDesc { knot: KnotExpr::Torus(2, 3), coefficient: one_over(n) });
        assert!(!d.is_s3());
    }
    let d = branched_cover(&q, &KnotExpr::Twist(1), 2).unwrap();
    assert_eq!(d.knot.to_string(), "K_1 # T(2,3) # K_1");
}

#[test]
fn s3_flag() {
    assert!(branched_cover(&PatternSpec::p_n(), &KnotExpr::Unknot, 5).unwrap().is_s3());
    let lens = SurgeryDesc { knot: KnotExpr::Unknot, coefficient: Fraction::new(5, 2) };
    assert!(!lens.is_s3() && !lens.is_homology_sphere());
}

#[test]
fn cover_determinants_multiply() {
    for pattern in [PatternSpec::p_n(), PatternSpec::q_n()] {
        for k in companions() {
            let d = branched_cover(&pattern, &k, 2).unwrap();
            let expected = determinant(&k).unwrap().pow(2) * determinant(&pattern.friend).unwrap();
            assert_eq!(determinant(&d.knot).unwrap(), expected, "{} with {k}", pattern.name);
            // independent route through the Seifert matrix of a closed braid
            if let Some(b) = closed_braid(&d.knot) {
                assert_eq!(seifert_signature_det(b.letters()).1, BigInt::from(expected));
            }
        }
    }
}

#[test]
fn one_over_n_covers_are_homology_spheres() {
    for pattern in [PatternSpec::p_n(), PatternSpec::q_n()] {
        for k in companions() {
            for n in 1..=3 {
                let d = branched_cover(&pattern, &k, n).unwrap();
                if let Some(g) = d.group().unwrap() {
                    assert!(abelianization(&g).is_empty(), "{} {k} n={n}", pattern.name);
                }
            }
        }
    }
    let d = SurgeryDesc { knot: KnotExpr::Torus(2, 3), coefficient: one_over(-2) };
    assert!(abelianization(&d.group().unwrap().unwrap()).is_empty());
}

#[test]
fn errors() {
    let mut p = PatternSpec::p_n();
    p.indices = IndexRange { min: 1, max: Some(10) };
    assert!(matches!(branched_cover(&p, &KnotExpr::Unknot, 11), Err(CoverError::IndexOutOfRange { .. })));
    p.indices = IndexRange { min: -5, max: None };
    assert!(matches!(branched_cover(&p, &KnotExpr::Unknot, 0), Err(CoverError::Infinite(_))));

    let mut p = PatternSpec::q_n();
    p.replaced = "[3]".parse().unwrap();
    assert!(matches!(branched_cover(&p, &KnotExpr::Unknot, 1), Err(CoverError::ZeroCoefficient { n: 1 })));

    let mut p = PatternSpec::p_n();
    p.infection = Infection::General { note: "a non-meridional curve".into() };
    assert!(matches!(branched_cover(&p, &KnotExpr::Torus(2, 3), 1), Err(CoverError::Unsupported(_))));

    let mut p = PatternSpec::p_n();
    p.reference_framing = Fraction::infinity();
    assert!(branched_cover(&p, &KnotExpr::Unknot, 1).is_err());

    assert!(branched_cover(&PatternSpec::p_n(), &KnotExpr::Torus(2, 4), 1).is_err());
    assert!(surgery_coefficient(&Fraction::zero(), &Fraction::infinity()).is_err());
}

#[test]
fn pattern_json() {
    let text = r#"{
        "name": "Qn",
        "friend": {"Torus": [2, 3]},
        "reference_framing": "3",
        "replaced": "[3,n]",
        "infection": "Meridional",
        "indices": {"min": 1}
    }"#;
    let p: PatternSpec = serde_json::from_str(text).unwrap();
    assert_eq!(p, PatternSpec::q_n());
    let d = branched_cover(&p, &KnotExpr::Unknot, 4).unwrap();
    let back: SurgeryDesc = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
    assert_eq!(back, d);
    let general: Infection = serde_json::from_str(r#"{"General":{"note":"x"}}"#).unwrap();
    assert_eq!(general, Infection::General { note: "x".into() });
    assert!(serde_json::from_str::<PatternSpec>(&text.replace("[3,n]", "3+1/n")).is_err());
}

#[test]
fn infection_of_friend() {
    let k = KnotExpr::Twist(3);
    let j = KnotExpr::Torus(2, 3);
    let infected = infect(&j, &k, &Infection::Meridional).unwrap();
    assert_eq!(infected.summands().len(), 3);
    assert_eq!(determinant(&infected).unwrap(), determinant(&k).unwrap().pow(2) * BigUint::from(3u32));
    let b = closed_braid(&KnotExpr::sum(j.clone(), j)).unwrap();
    assert_eq!(b, BraidWord::new(4, vec![1, 1, 1, 3, 3, 3, 2]).unwrap());
    assert_eq!(closed_braid(&KnotExpr::Torus(2, 3)), torus_braid(2, 3).ok());
}

proptest! {
    #[test]
    fn replaced_fractions_match_continued_fractions(a in -9i64..10, c in -3i64..4, d in -9i64..10, n in 1i64..40) {
        let mut p = PatternSpec::p_n();
        p.replaced = WordTemplate(vec![Affine { coeff: 0, constant: a }, Affine { coeff: c, constant: d }]);
        prop_assert_eq!(p.replaced.to_string().parse::<WordTemplate>().unwrap(), p.replaced.clone());
        let exps: Vec<i64> = vec![a, c * n + d];
        let (num, den) = continued_fraction_pair(&exps);
        let expected = Fraction::try_new(num, den).unwrap();
        prop_assert_eq!(p.replaced_fraction(n), expected);
    }

    #[test]
    fn q_n_coefficient_is_one_over_n(n in 1i64..100_000) {
        let d = branched_cover(&PatternSpec::q_n(), &KnotExpr::Unknot, n).unwrap();
        prop_assert_eq!(d.coefficient, Fraction::new(1, n));
    }
}
