use chebroot::nthroot::{pth_root_iterate, pth_root_trace, PthRootProblem};
use chebroot::sqrt::{newton, NewtonForm, SqrtProblem};
use chebroot::{BigFloat, ExactRational};

const REFERENCE_PRECISION: usize = 8192;
/// Cap on `|e_{n+1}| / |e_n|^{d+1}` over the first steps.
const RATIO_BOUND: f64 = 1.0;

#[test]
fn error_ratios_stay_bounded() {
    let x = ExactRational::from(51);
    for p in 2..=4u32 {
        for d in 1..=3u32 {
            let prob = PthRootProblem::with_default_seed(x.clone(), p, d).unwrap();
            let root = prob.reference_root(REFERENCE_PRECISION);
            let trace = pth_root_trace(&prob, 4).unwrap().with_errors(&root);
            let e = trace.errors.unwrap();
            for n in 1..=3usize {
                let denom = (0..=d).fold(BigFloat::from_i64(1, REFERENCE_PRECISION), |acc, _| acc.mul(&e[n]));
                let ratio = e[n + 1].div(&denom).to_f64();
                assert!(ratio.is_finite() && ratio <= RATIO_BOUND, "p={p} d={d} n={n}: ratio {ratio}");
            }
        }
    }
}

#[test]
fn newton_reduction() {
    let x = ExactRational::ratio(51, 2);
    let sq = SqrtProblem::with_default_seed(x.clone()).unwrap();
    let pth = PthRootProblem::new(x, 2, sq.r().clone(), 1).unwrap();
    for n in 0..=5 {
        let want = newton(&sq, n, NewtonForm::Iterate).unwrap().into_exact().unwrap();
        assert_eq!(pth_root_iterate(&pth, n).unwrap(), want);
    }
}

#[test]
fn exact_root_is_a_fixed_point() {
    let prob = PthRootProblem::new(ExactRational::from(125), 3, ExactRational::from(5), 3).unwrap();
    assert_eq!(pth_root_iterate(&prob, 6).unwrap(), ExactRational::from(5));
}

#[test]
fn iterates_converge_for_fractional_inputs() {
    let x = ExactRational::ratio(7, 3);
    for p in [3u32, 5] {
        let prob = PthRootProblem::with_default_seed(x.clone(), p, 2).unwrap();
        let root = prob.reference_root(512);
        let h = BigFloat::from_rational(&pth_root_iterate(&prob, 5).unwrap(), 512);
        assert!(h.close_to(&root, 100), "p={p}");
    }
}
