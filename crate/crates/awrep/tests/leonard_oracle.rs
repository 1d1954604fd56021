//! Oracle checks for the dual representation, the Leonard pair and the
//! q-Racah correspondence.

use awrep::leonard::*;
use awrep::matrix::{max_abs, nullspace, scalar_identity, singular_values};
use awrep::qkernel::{FieldCfg, Scalar, I, ONE};
use awrep::repbuild::*;
use awrep::repverify::{intertwiner, relation_residual, trace_class};

fn cfg_real(q: f64) -> FieldCfg {
    FieldCfg::new(Scalar::new(q.sqrt(), 0.0), 1e-9, 64).unwrap()
}

/// Parameters in the tame q-Racah regime: all three characteristic roots
/// near `q^{N+1}` and `|q^{mu - N/2}|` of order one, so polynomial values
/// and recurrence coefficients stay O(1).
fn sample_params(cfg: &FieldCfg, n: usize) -> RepParams {
    let qmu = Scalar::new(1.31, 0.4) * cfg.qh(n as i32);
    let jh = [
        Scalar::new(1.23, 0.31) * cfg.qh(n as i32 + 1),
        Scalar::new(0.71, -0.52) * cfg.qh(n as i32 + 1),
        cfg.qh(n as i32 + 1),
    ];
    RepParams::general(qmu, jh, n)
}

#[test]
fn dual_side_represents_reversed_parameters() {
    let cfg = cfg_real(1.7);
    let params = sample_params(&cfg, 4);
    let ap = params_from_roots(&params, &cfg);
    let ap_dual = dual_side_params(&params, &cfg);
    assert!((ap_dual.a1 - ap.a3).norm() < 1e-9 * (1.0 + ap.a3.norm()), "{ap_dual:?} vs {ap:?}");
    assert!((ap_dual.a2 - ap.a2).norm() < 1e-9 * (1.0 + ap.a2.norm()));
    assert!((ap_dual.a3 - ap.a1).norm() < 1e-9 * (1.0 + ap.a1.norm()));
}

#[test]
fn dual_rep_satisfies_relations_and_matches_trace() {
    let cfg = cfg_real(1.8);
    for n in [1usize, 3, 5] {
        let params = sample_params(&cfg, n);
        let rep_x = build_classical_x(&params, Branch::Main, &cfg).unwrap();
        let rep_y = build_dual(&params, Branch::Main, &cfg).unwrap();
        let (res, scale) = relation_residual(&rep_y, &rep_y.meta.params, &cfg).unwrap();
        for r in res {
            assert!(r < 1e-9 * scale, "dual relations N={n}: {res:?} scale {scale:.2e}");
        }
        // I1 diagonal with entries -i[nu - j]
        let qnu = params.qnu(&cfg);
        for j in 0..=n {
            let expect = -I
                * ((qnu * cfg.qn(-(j as i32))) - (qnu * cfg.qn(-(j as i32))).inv())
                / cfg.qdiff();
            assert!((rep_y.i1[(j, j)] - expect).norm() < 1e-9 * (1.0 + expect.norm()));
        }
        // traces of I3 agree
        let t_x: Scalar = (0..=n).map(|k| rep_x.i3[(k, k)]).sum();
        let t_y: Scalar = (0..=n).map(|k| rep_y.i3[(k, k)]).sum();
        assert!((t_x - t_y).norm() < 1e-9 * (1.0 + t_x.norm()));
        assert!(
            (trace_class(&rep_x, &cfg).unwrap() - trace_class(&rep_y, &cfg).unwrap()).norm()
                < 1e-9
        );
    }
}

#[test]
fn dual_equivalence_and_spectra() {
    let cfg = cfg_real(1.6);
    let n = 4;
    let params = sample_params(&cfg, n);
    let rep_x = build_classical_x(&params, Branch::Main, &cfg).unwrap();
    let rep_y = build_dual(&params, Branch::Main, &cfg).unwrap();
    let t = dual_equivalence(&rep_x, &rep_y, &cfg).unwrap();
    assert!((t[(0, 0)] - ONE).norm() < 1e-12);
    let defect = max_abs(&(&rep_x.i3 * &t - &t * &rep_y.i3));
    assert!(defect < 1e-8 * (1.0 + max_abs(&rep_x.i3)), "intertwiner defect {defect:.2e}");
    // every claimed eigenvalue -i[mu-j] is an eigenvalue of the dual I3
    for eig in &rep_x.meta.spectrum {
        let shifted = &rep_y.i3 - scalar_identity(n + 1, *eig);
        let sv = singular_values(&shifted);
        let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        let smax = sv.iter().cloned().fold(0.0, f64::max);
        assert!(smin < 1e-8 * (1.0 + smax), "eigenvalue {eig} missing from dual I3");
    }
}

#[test]
fn dual_determinant_identity() {
    let cfg = cfg_real(1.9);
    for n in [0usize, 1, 2, 4] {
        let params = sample_params(&cfg, n);
        let rep_y = build_dual(&params, Branch::Main, &cfg).unwrap();
        let (l0, _) = lambda_g(0, &params, &cfg);
        let _ = l0;
        let i_mu = I
            * (params.qmu - params.qmu.inv())
            / cfg.qdiff();
        let m = &rep_y.i3 + scalar_identity(n + 1, i_mu);
        let det = awrep::matrix::determinant(&m);
        let closed = dual_det_closed_form(&params, &cfg);
        assert!(
            (det - closed).norm() < 1e-7 * (1.0 + closed.norm()),
            "N={n}: det {det} vs closed form {closed}"
        );
    }
}

#[test]
fn double_dual_is_equivalent_to_original() {
    let cfg = cfg_real(1.7);
    let params = sample_params(&cfg, 3);
    // nu-involution at the parameter level
    let dd = params.dual(&cfg).dual(&cfg);
    assert!((dd.qmu - params.qmu).norm() < 1e-12);
    // the second dual lands in the reversed-parameter algebra; push it back
    // through the I1 <-> I3 isomorphism and compare with the original
    let rep_x = build_classical_x(&params, Branch::Main, &cfg).unwrap();
    let rep_yy = build_dual(&params.dual(&cfg), Branch::Main, &cfg).unwrap();
    let j1 = rep_yy.i3.clone();
    let j3 = rep_yy.i1.clone();
    let j2 = &rep_yy.i2 + (&rep_yy.i1 * &rep_yy.i3 - &rep_yy.i3 * &rep_yy.i1) * cfg.vsum();
    let scale = 1.0 + max_abs(&rep_x.i2);
    assert!(max_abs(&(&j1 - &rep_x.i1)) < 1e-9 * scale);
    assert!(max_abs(&(&j2 - &rep_x.i2)) < 1e-9 * scale);
    assert!(max_abs(&(&j3 - &rep_x.i3)) < 1e-9 * scale);
    let dd_rep = Rep {
        n: rep_yy.n,
        basis: BasisLabel::X,
        i1: j1,
        i2: j2,
        i3: j3,
        meta: rep_x.meta.clone(),
    };
    let t = intertwiner(&dd_rep, &rep_x, &cfg).expect("double dual ~ original");
    assert!(awrep::matrix::is_invertible(&t, cfg.tol()));
}

#[test]
fn leonard_pair_structure() {
    let cfg = cfg_real(1.8);
    let n = 4;
    let params = sample_params(&cfg, n);
    let lp = leonard_pair(&params, Branch::Main, &cfg).unwrap();
    let q2mu = params.qmu * params.qmu;
    let qnu2 = lp.qnu * lp.qnu;
    for k in 0..=n {
        // B_X diagonal: q^{-k} - q^{-2mu+k}
        let expect_b = cfg.qn(-(k as i32)) - cfg.qn(k as i32) / q2mu;
        assert!((lp.b_x[(k, k)] - expect_b).norm() < 1e-9 * (1.0 + expect_b.norm()));
        // A_Y diagonal: q^{-k} - q^{-2nu+k}
        let expect_a = cfg.qn(-(k as i32)) - cfg.qn(k as i32) / qnu2;
        assert!((lp.a_y[(k, k)] - expect_a).norm() < 1e-9 * (1.0 + expect_a.norm()));
    }
    // off-diagonal entries of B_X / A_Y vanish
    for i in 0..=n {
        for j in 0..=n {
            if i != j {
                assert!(lp.b_x[(i, j)].norm() < 1e-10);
                assert!(lp.a_y[(i, j)].norm() < 1e-10);
            }
        }
    }
    // A_X and B_Y are irreducible tridiagonal: sub/super entries nonzero
    for j in 0..n {
        assert!(lp.a_x[(j + 1, j)].norm() > 1e-9, "A_X sub at {j}");
        assert!(lp.a_x[(j, j + 1)].norm() > 1e-9, "A_X super at {j}");
        assert!(lp.b_y[(j + 1, j)].norm() > 1e-9, "B_Y sub at {j}");
        assert!(lp.b_y[(j, j + 1)].norm() > 1e-9, "B_Y super at {j}");
    }
    // B_X diagonal pairwise distinct
    for a in 0..=n {
        for b in (a + 1)..=n {
            assert!((lp.b_x[(a, a)] - lp.b_x[(b, b)]).norm() > 1e-9);
        }
    }
}

#[test]
fn transition_matrix_intertwines_and_matches_solver() {
    let cfg = cfg_real(1.7);
    let n = 4;
    let params = sample_params(&cfg, n);
    let lp = leonard_pair(&params, Branch::Main, &cfg).unwrap();
    let p = &lp.p;
    // row 0 all ones; column 0 equals r_j (R_j(mu(0)) = 1)
    for k in 0..=n {
        assert!((p[(0, k)] - ONE).norm() < 1e-10);
    }
    // A_X P = P A_Y and B_X P = P B_Y
    let d1 = max_abs(&(&lp.a_x * p - p * &lp.a_y));
    let d2 = max_abs(&(&lp.b_x * p - p * &lp.b_y));
    let scale = 1.0 + max_abs(&lp.a_x).max(max_abs(&lp.b_x)) * max_abs(p);
    assert!(d1 < 1e-8 * scale, "A-side transition defect {d1:.2e}");
    assert!(d2 < 1e-8 * scale, "B-side transition defect {d2:.2e}");
    // P is proportional to the solved intertwiner
    let rep_x = build_classical_x(&params, Branch::Main, &cfg).unwrap();
    let rep_y = build_dual(&params, Branch::Main, &cfg).unwrap();
    let t = dual_equivalence(&rep_x, &rep_y, &cfg).unwrap();
    // normalize both at (0,0) and compare entrywise
    let t00 = t[(0, 0)];
    let p00 = p[(0, 0)];
    for i in 0..=n {
        for j in 0..=n {
            let lhs = p[(i, j)] / p00;
            let rhs = t[(i, j)] / t00;
            assert!(
                (lhs - rhs).norm() < 1e-7 * (1.0 + rhs.norm()),
                "P vs intertwiner at ({i},{j}): {lhs} vs {rhs}"
            );
        }
    }
}

#[test]
fn racah_poly_basics() {
    let cfg = cfg_real(1.6);
    let params = sample_params(&cfg, 5);
    let rp = racah_params(&params, &cfg);
    // R_0(mu(x)) = 1 and R_n(mu(0)) = 1
    for x in 0..=5 {
        assert!((racah_poly(0, x, &rp, &cfg).unwrap() - ONE).norm() < 1e-12);
    }
    for n in 0..=5 {
        assert!((racah_poly(n, 0, &rp, &cfg).unwrap() - ONE).norm() < 1e-12);
    }
    // n = 1: written-out two-term sum
    let q = cfg.q();
    let ab = rp.alpha * rp.beta;
    let cd = rp.gamma * rp.delta;
    for x in 1..=5i64 {
        let term = (ONE - q.inv())
            * (ONE - ab * q * q)
            * (ONE - cfg.qn(-(x as i32)))
            * (ONE - cd * cfg.qn(x as i32 + 1))
            * q
            / ((ONE - rp.alpha * q)
                * (ONE - rp.beta * rp.delta * q)
                * (ONE - rp.gamma * q)
                * (ONE - q));
        let expect = ONE + term;
        let got = racah_poly(1, x, &rp, &cfg).unwrap();
        assert!((got - expect).norm() < 1e-11 * (1.0 + expect.norm()));
    }
}

#[test]
fn coefficient_forms_agree() {
    // A_j/C_j (representation side) vs racah_an/racah_cn, and the dual-side
    // B_j/D_j vs racah_bn/racah_dn
    let cfg = cfg_real(1.9);
    let params = sample_params(&cfg, 6);
    let rp = racah_params(&params, &cfg);
    let dual = params.dual(&cfg);
    for j in 0..=6i64 {
        let a1 = aj_coeff(j, &params, &cfg);
        let a2 = racah_an(j, &rp, &cfg);
        assert!((a1 - a2).norm() < 1e-10 * (1.0 + a2.norm()), "A_{j}: {a1} vs {a2}");
        let c1 = cj_coeff(j, &params, &cfg);
        let c2 = racah_cn(j, &rp, &cfg);
        assert!((c1 - c2).norm() < 1e-10 * (1.0 + c2.norm()), "C_{j}: {c1} vs {c2}");
        let b1 = aj_coeff(j, &dual, &cfg);
        let b2 = racah_bn(j, &rp, &cfg);
        assert!((b1 - b2).norm() < 1e-10 * (1.0 + b2.norm()), "B_{j}: {b1} vs {b2}");
        let d1 = cj_coeff(j, &dual, &cfg);
        let d2 = racah_dn(j, &rp, &cfg);
        assert!((d1 - d2).norm() < 1e-10 * (1.0 + d2.norm()), "D_{j}: {d1} vs {d2}");
    }
    // D_0 = 0 exactly
    assert_eq!(racah_dn(0, &rp, &cfg).norm(), 0.0);
}

#[test]
fn recurrence_and_difference_hold() {
    let cfg = cfg_real(1.6);
    for n in [1usize, 4, 7] {
        let params = sample_params(&cfg, n);
        let rp = racah_params(&params, &cfg);
        let (r1, r2) = recurrence_difference_check(&rp, &cfg).unwrap();
        assert!(r1 < 1e-8, "recurrence residual N={n}: {r1:.2e}");
        assert!(r2 < 1e-8, "difference residual N={n}: {r2:.2e}");
    }
}

#[test]
fn conditions_report() {
    let cfg = cfg_real(1.7);
    let params = sample_params(&cfg, 4);
    let rp = racah_params(&params, &cfg);
    let report = validate_conditions(&rp, &cfg);
    assert!(report.pass(), "{report:?}");
    assert_eq!(report.finiteness, [false, false, true]); // gamma q = q^{-N}
    // corrupt gamma to hit irpol1: gamma = q^{-2}
    let bad = RacahParams { gamma: cfg.qn(-2), ..rp };
    let report = validate_conditions(&bad, &cfg);
    assert!(!report.pass());
    assert!(report
        .irpol_failures
        .iter()
        .any(|(name, k)| name.contains("gamma = q^-k") && *k == 2));
    // classpol violation: alpha beta q = q^{-l} interior
    let ab_target = cfg.qn(-3); // l = 3 in 1..2N-1
    let bad2 = RacahParams { beta: ab_target / (rp.alpha * cfg.q()), ..rp };
    let report2 = validate_conditions(&bad2, &cfg);
    assert!(report2.classpol_failures.iter().any(|(_, l)| *l == 3));
}

#[test]
fn border_identities() {
    let cfg = cfg_real(1.8);
    for n in [1usize, 3, 5] {
        for l in [BorderL::TwoNPlusOne, BorderL::TwoN] {
            let qmu = I * cfg.qh(l.exponent(n));
            let jh = [
                Scalar::new(1.13, 0.21) * cfg.qh(n as i32 + 1),
                Scalar::new(0.67, -0.44) * cfg.qh(n as i32 + 1),
                cfg.qh(n as i32 + 1),
            ];
            let params = RepParams { qmu, jh, n, variant: Variant::Border(l) };
            let gap = border_boundary_identity(&params, l, &cfg).unwrap();
            assert!(gap < 1e-9, "boundary identity l={} N={n}: {gap:.2e}", l.exponent(n));
            let res = border_recurrence_check(&params, l, &cfg).unwrap();
            assert!(res < 1e-8, "border recurrence l={} N={n}: {res:.2e}", l.exponent(n));
        }
    }
}

#[test]
fn x_basis_similar_to_v_basis_by_diagonal() {
    let cfg = cfg_real(1.7);
    let params = sample_params(&cfg, 3);
    let rep_v = build_classical(&params, Branch::Main, &cfg).unwrap();
    let rep_x = build_classical_x(&params, Branch::Main, &cfg).unwrap();
    let t = intertwiner(&rep_v, &rep_x, &cfg).expect("X ~ V");
    // the intertwiner is diagonal
    for i in 0..=3usize {
        for j in 0..=3usize {
            if i != j {
                assert!(t[(i, j)].norm() < 1e-9, "t[{i}{j}] = {}", t[(i, j)]);
            }
        }
    }
}

#[test]
fn zero_case_embeds_into_general_family() {
    // the A1 = A2 = 0 classical rep matches the general construction at
    // q^{j1} = q^{N+1}, q^{j2} = -i q^{mu+1/2}, q^{j3} = i q^{mu+1/2}
    let cfg = cfg_real(1.6);
    let n = 3;
    let a3 = Scalar::new(0.9, -0.2);
    let zero_rep = build_zero_classical(a3, n, 0, &cfg).unwrap();
    let qmu = zero_rep.meta.qmu;
    let u = qmu * cfg.q12();
    let jh = [cfg.qh(n as i32 + 1), (-I * u).sqrt(), (I * u).sqrt()];
    let params = RepParams::general(qmu, jh, n);
    let ap = params_from_roots(&params, &cfg);
    assert!(ap.a1.norm() < 1e-9);
    assert!(ap.a2.norm() < 1e-9);
    assert!((ap.a3 - a3).norm() < 1e-9 * (1.0 + a3.norm()), "{} vs {a3}", ap.a3);
    let general = build_classical(&params, Branch::Main, &cfg).unwrap();
    let d = max_abs(&(&general.i1 - &zero_rep.i1))
        .max(max_abs(&(&general.i2 - &zero_rep.i2)))
        .max(max_abs(&(&general.i3 - &zero_rep.i3)));
    let scale = 1.0 + max_abs(&general.i1);
    assert!(d < 1e-8 * scale, "entrywise gap {d:.2e}");
}

#[test]
fn commutant_detects_reducibility() {
    use awrep::repverify::{commutant_dim, direct_sum};
    let cfg = cfg_real(1.7);
    let params = sample_params(&cfg, 2);
    let rep = build_classical(&params, Branch::Main, &cfg).unwrap();
    assert_eq!(commutant_dim(&rep, &cfg), 1);
    // direct sum with itself: 2x2 scalar blocks commute -> dim 4
    let double = direct_sum(&rep, &rep);
    assert_eq!(commutant_dim(&double, &cfg), 4);
    // direct sum of two inequivalent reps -> dim 2
    let params2 = RepParams::general(
        Scalar::new(0.83, -0.27) * cfg.qh(2),
        params.jh,
        2,
    );
    let rep2 = build_classical(&params2, Branch::Main, &cfg).unwrap();
    let mixed = direct_sum(&rep, &rep2);
    assert_eq!(commutant_dim(&mixed, &cfg), 2);
    // nullspace sanity for the eigenspace-dimension criterion
    let ns = nullspace(
        &(&rep.i3 - scalar_identity(3, rep.meta.spectrum[1])),
        cfg.tol(),
    );
    assert_eq!(ns.len(), 1);
}
