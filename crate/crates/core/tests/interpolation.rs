mod common;

use common::{lin, q, v};
use conedual::check::{satisfiable_interpolation_instance, violating_interpolation_instance};
use conedual::convex_sep::{separate, ExtVec, SeparationOutcome};
use conedual::extreal::ExtReal;
use conedual::functionals::{LinFun, SublinFun, SuperlinFun};
use conedual::interpolate::{
    average_dominates_min, check_min_below, interpolate, theorem_main_witnesses, verify_certificate,
    witnesses_attain, InterpolateError, MinBelow,
};
use conedual::sample::{self, small_grid};
use num_traits::Zero;
use proptest::prelude::*;

/// Points of `A_phi = { phi <= 1 }` on its boundary, from rescaled samples.
fn boundary_points(phi: &SublinFun, seed: u64, count: usize) -> Vec<ExtVec> {
    let mut rng = sample::rng(seed);
    let dim = phi.dim();
    let candidates = small_grid(dim, 60)
        .into_iter()
        .chain((0..count).map(|_| sample::finite_vec(&mut rng, dim, 8, 4)));
    candidates
        .filter_map(|y| {
            let val = phi.eval(&y).ok()?;
            let r = val.as_rational()?;
            if r.is_zero() {
                return None;
            }
            Some(y.scale(&ExtReal::Finite(r.recip())))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sandwich_on_constructed_instances(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let (clause, phi) = satisfiable_interpolation_instance(&mut rng);
        let res = interpolate(&clause, &phi).unwrap();
        prop_assert!(verify_certificate(&clause, &phi, &res));
        let min = SuperlinFun::new(clause.clone()).unwrap();
        for _ in 0..100 {
            let y = sample::ext_vec(&mut rng, phi.dim(), 8, 4, 0.15);
            prop_assert!(min.eval(&y).unwrap() <= res.combined.eval(&y).unwrap());
            prop_assert!(res.combined.eval(&y).unwrap() <= phi.eval(&y).unwrap());
            prop_assert!(average_dominates_min(&clause, &res.weights, &y));
        }
    }

    #[test]
    fn agrees_with_separation_of_sampled_images(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let (clause, phi) = satisfiable_interpolation_instance(&mut rng);
        let points = boundary_points(&phi, seed, 80);
        let images: Vec<ExtVec> = points
            .iter()
            .map(|y| ExtVec(clause.iter().map(|g| g.eval(y).unwrap()).collect()))
            .collect();
        prop_assume!(!images.is_empty());
        // the image of a convex set below min <= 1 misses the open corner
        let SeparationOutcome::Separated(route) = separate(&images, clause.len()).unwrap() else {
            return Err(TestCaseError::fail("sampled images meet V"));
        };
        let res = interpolate(&clause, &phi).unwrap();
        for img in &images {
            prop_assert!(route.apply(img) <= ExtReal::one());
            prop_assert!(res.weights.apply(img) <= ExtReal::one());
        }
    }

    #[test]
    fn violations_are_exact(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let (clause, phi) = violating_interpolation_instance(&mut rng);
        let min = SuperlinFun::new(clause.clone()).unwrap();
        let MinBelow::Violated { witness, gap } = check_min_below(&min, &phi).unwrap() else {
            return Err(TestCaseError::fail("violation not detected"));
        };
        prop_assert!(gap > num_rational::BigRational::zero());
        prop_assert!(min.eval(&witness).unwrap() > phi.eval(&witness).unwrap());
        match interpolate(&clause, &phi) {
            Err(InterpolateError::PreconditionViolated { witness }) => {
                prop_assert!(min.eval(&witness).unwrap() > phi.eval(&witness).unwrap());
            }
            other => return Err(TestCaseError::fail(format!("expected a violation, got {other:?}"))),
        }
    }
}

#[test]
fn singleton_clauses_recover_phi() {
    let branches = vec![lin(&[2, 0, 1]), lin(&[0, 3, 1]), lin(&[1, 1, 1])];
    let phi = SublinFun::new(branches.clone()).unwrap();
    let mut c_gens = branches;
    c_gens.push(lin(&[1, 0, 0]));
    let clauses = vec![vec![0], vec![1], vec![2], vec![3, 0]];
    let ws = theorem_main_witnesses(&clauses, &c_gens, &phi).unwrap();
    assert_eq!(ws.len(), 4);
    assert!(witnesses_attain(&phi, &ws, &small_grid(3, 125)));
}

#[test]
fn reference_clause() {
    // min(2y1, 2y2) <= y1 + y2 with the average as interpolant
    let clause = [lin(&[2, 0]), lin(&[0, 2])];
    let phi = SublinFun::new(vec![lin(&[1, 1])]).unwrap();
    let res = interpolate(&clause, &phi).unwrap();
    assert_eq!(res.weights.as_slice(), &[q(1, 2), q(1, 2)]);
    assert_eq!(res.combined, lin(&[1, 1]));
    assert_eq!(res.combined.eval(&v(&[3, 5])).unwrap(), ExtReal::from(8));
}

#[test]
fn bad_clause_index_is_reported() {
    let phi = SublinFun::new(vec![lin(&[1])]).unwrap();
    let err = theorem_main_witnesses(&[vec![4]], &[lin(&[1])], &phi).unwrap_err();
    assert!(matches!(err, InterpolateError::Clause { clause: 0, .. }));
}

#[test]
fn infinite_coefficients_are_rejected() {
    let inf = LinFun::new(ExtVec(vec![ExtReal::Infinity]));
    let phi = SublinFun::new(vec![inf]).unwrap();
    assert!(interpolate(&[lin(&[1]), lin(&[2])], &phi).is_err());
}
