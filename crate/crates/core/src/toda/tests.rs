use super::*;
use crate::correlators::g_npoint;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[test]
fn twist_constants() {
    assert_eq!(
        c_constants(1, 4).unwrap(),
        vec![r(1, 2), r(1, 12), r(0, 1), r(-1, 120), r(0, 1)]
    );
    assert_eq!(
        c_constants(2, 4).unwrap(),
        vec![r(2, 1), r(7, 6), r(1, 1), r(59, 60), r(1, 1)]
    );
    assert_eq!(
        c_constants(-1, 3).unwrap(),
        vec![r(1, 2), r(-1, 12), r(0, 1), r(1, 120)]
    );
    assert!(c_constants(0, 3).unwrap().iter().all(|c| c.is_zero()));
    assert_eq!(twist_series(2, 2).unwrap().coeff(&[-1]), r(2, 1));
}

#[test]
fn hamiltonian_is_shifted_chern_plus_constant() {
    // charge m shifts every content by m: e^{mz} times the Chern eigenvalue
    let c = c_constants(1, 3).unwrap();
    let lam = Partition::new(vec![2, 1]).unwrap();
    let w = Window::new(vec![VarSpec::taylor("z", 3)]).unwrap();
    let chern = crate::operators::chern_eigenvalue(&lam, &w, "z").unwrap();
    let shifted = chern
        .try_mul(&Series::exp_linear(&w, "z", &r(1, 1), 3).unwrap())
        .unwrap();
    let g1 = hamiltonian_eigenvalues(&lam, 1, 3).unwrap();
    for k in 0..=3 {
        let shift = &c[k] / &Rational::factorial(k as u32);
        assert_eq!(g1[k], &shifted.coeff(&[k as i32]) + &shift, "k = {k}");
    }
    assert_eq!(hamiltonian_eigenvalues(&lam, 0, 0).unwrap()[0], r(3, 1));
}

#[test]
fn x_zero_slice_is_exponential() {
    let req = TauRequest {
        m: 1,
        k: 2,
        total_degree: 3,
        n_max: 3,
    };
    let t = tau(&req).unwrap();
    let w = t.window().clone();
    let slice = t.filter_terms(|e, _| e[4..].iter().all(|&x| x == 0));
    let t1s1 = Series::var(&w, "t1")
        .unwrap()
        .try_mul(&Series::var(&w, "s1").unwrap())
        .unwrap();
    let t2s2 = Series::var(&w, "t2")
        .unwrap()
        .try_mul(&Series::var(&w, "s2").unwrap())
        .unwrap();
    let expected = t1s1.try_add(&t2s2.scale(&r(1, 2))).unwrap().exp().unwrap();
    assert_eq!(slice, expected);
}

#[test]
fn lowest_coefficients() {
    let req = TauRequest {
        m: 0,
        k: 1,
        total_degree: 2,
        n_max: 2,
    };
    let t = tau(&req).unwrap();
    // order t1 s1 x0 x1
    assert_eq!(t.coeff(&[0, 0, 0, 0]), r(1, 1));
    assert_eq!(t.coeff(&[1, 1, 1, 0]), r(1, 1));
    assert_eq!(t.coeff(&[1, 1, 0, 1]), r(0, 1));
    assert_eq!(t.coeff(&[0, 0, 1, 0]), r(0, 1));
    let t1 = tau(&TauRequest {
        m: 1,
        ..req.clone()
    })
    .unwrap();
    assert_eq!(t1.coeff(&[0, 0, 1, 0]), r(1, 2));
    assert_eq!(t1.coeff(&[0, 0, 0, 1]), r(1, 12));
}

#[test]
fn linear_x_terms_are_one_point_functions() {
    let req = TauRequest {
        m: 0,
        k: 2,
        total_degree: 3,
        n_max: 3,
    };
    let t = tau(&req).unwrap();
    let zw = Window::new(vec![VarSpec::taylor("z", 2)]).unwrap();
    let cases = [
        (vec![2, 1], vec![1, 1, 1]),
        (vec![3], vec![2, 1]),
        (vec![2], vec![1, 1]),
    ];
    for (l, m) in cases {
        let (lam, mu) = (Partition::new(l).unwrap(), Partition::new(m).unwrap());
        let g = g_npoint(&lam, &mu, &["z"], &zw).unwrap();
        for k in 0..=1usize {
            let mut e = vec![0; 7];
            for &p in lam.parts() {
                e[p as usize - 1] += 1;
            }
            for &p in mu.parts() {
                e[2 + p as usize - 1] += 1;
            }
            e[4 + k] = 1;
            // t_λ has weight |λ| ≤ 3 and x adds 2; weight 2|λ| + 2 ≤ 6 only for |λ| ≤ 2
            if 2 * lam.size() + 2 <= 6 {
                assert_eq!(t.coeff(&e), g.coeff(&[k as i32]), "{lam} {mu} k={k}");
            }
        }
    }
}

#[test]
fn lowest_toda_equation() {
    for m in [-1, 0, 1] {
        let rep = toda_residual(&TauRequest {
            m,
            k: 2,
            total_degree: 3,
            n_max: 3,
        })
        .unwrap();
        assert!(rep.pass, "m = {m}: {:?}", rep.max_nonzero_degree);
        assert!(rep.residual.is_zero());
    }
}

#[test]
fn tau_errors() {
    let bad = TauRequest {
        m: 0,
        k: 1,
        total_degree: 3,
        n_max: 2,
    };
    assert!(matches!(tau(&bad), Err(Error::Window(_))));
    let k0 = TauRequest {
        m: 0,
        k: 0,
        total_degree: 1,
        n_max: 1,
    };
    assert!(matches!(tau(&k0), Err(Error::Domain(_))));
}

#[test]
fn reduced_tau_coefficients() {
    let t = reduced_tau(3, 4, 3).unwrap();
    let x0 = t.filter_terms(|e, _| e[1] == 0);
    assert_eq!(
        x0.coeffs_of("w", 0, 3).unwrap(),
        vec![r(1, 1), r(1, 1), r(1, 2), r(1, 6)]
    );
    // w² coefficient = cosh(x₁)/2
    assert_eq!(t.coeff(&[2, 2]), r(1, 4));
    assert_eq!(t.coeff(&[2, 4]), r(1, 48));
    assert_eq!(t.coeff(&[2, 1]), r(0, 1));
    assert_eq!(t.coeff(&[1, 1]), r(0, 1));
}

#[test]
fn reduced_toda_equation() {
    assert!(reduced_toda_residual(4, 6, 4).unwrap().is_zero());
}
