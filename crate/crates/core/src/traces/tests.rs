use super::*;
use crate::operators::chern_eigenvalue;
use crate::partitions::Partition;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn zq(pole: u32, deg: u32, qdeg: u32) -> Arc<Window> {
    Window::new(vec![
        VarSpec::laurent("z", pole, deg),
        VarSpec::taylor("q", qdeg),
    ])
    .unwrap()
}

fn q_row(s: &Series, n: i32) -> Vec<Rational> {
    s.coeffs_of("q", n, n).unwrap()
}

// the q^n coefficient as a series in z alone
fn at_q(s: &Series, n: usize) -> Series {
    let zw = Window::new(vec![s.vars()[0].clone()]).unwrap();
    let terms: Vec<_> = s
        .terms()
        .filter(|(e, _)| e[1] == n as i32)
        .map(|(e, c)| (vec![e[0]], c.clone()))
        .collect();
    Series::from_terms(&zw, terms).unwrap()
}

#[test]
fn pochhammer_examples() {
    let w = Window::new(vec![VarSpec::taylor("q", 5)]).unwrap();
    let qq = q_pochhammer(&w, "q", None).unwrap();
    let inv = qq.invert(&w).unwrap();
    assert_eq!(
        inv.coeffs_of("q", 0, 5).unwrap(),
        [1, 1, 2, 3, 5, 7].map(|n| r(n, 1)).to_vec()
    );
    assert_eq!(
        qq.coeffs_of("q", 0, 3).unwrap(),
        [1, -1, -1, 0].map(|n| r(n, 1)).to_vec()
    );

    let w = zq(0, 4, 2);
    let a = q_pochhammer(&w, "q", Some(("z", 1))).unwrap();
    let ez = Series::exp_linear(&w, "z", &r(1, 1), 4).unwrap();
    assert_eq!(at_q(&a, 1), at_q(&ez.scale(&r(-1, 1)), 0));
}

#[test]
fn partition_numbers() {
    let w = Window::new(vec![VarSpec::taylor("q", 20)]).unwrap();
    let req = TraceRequest {
        factors: vec![],
        q: "q".into(),
        n_max: 20,
    };
    let t = q_trace(&req, &w).unwrap();
    let p = [
        1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627,
    ];
    assert_eq!(
        t.coeffs_of("q", 0, 20).unwrap(),
        p.map(|n| r(n, 1)).to_vec()
    );
    assert_eq!(t, q_pochhammer(&w, "q", None).unwrap().invert(&w).unwrap());
    let short = TraceRequest { n_max: 19, ..req };
    assert!(matches!(q_trace(&short, &w), Err(Error::Window(_))));
}

#[test]
fn theta_examples() {
    let w = zq(0, 7, 3);
    let t = theta(&w, "z", "q").unwrap();
    let zw = Window::new(vec![VarSpec::laurent("z", 0, 7)]).unwrap();
    let sig = varsigma(&zw, "z", 1).unwrap();
    assert_eq!(at_q(&t, 0), sig);
    for n in 0..=3 {
        assert!(q_row(&t, n)[0].is_zero());
    }
    let e = |c: i64| Series::exp_linear(&zw, "z", &r(c, 1), 7).unwrap();
    let second = &Series::constant(&zw, r(2, 1)) - &(&e(1) + &e(-1));
    assert_eq!(at_q(&t, 1), &sig * &second);
    // odd in z
    for (e, c) in t.terms() {
        assert!(e[0] % 2 == 1, "even power with coefficient {c}");
    }
    let d1 = theta_deriv(1, &w, "z", "q").unwrap();
    assert_eq!(
        d1.coeffs_of("z", 0, 4).unwrap()[..3],
        [r(1, 1), r(0, 1), r(1, 8)]
    );
    assert_eq!(at_q(&d1, 0).coeff(&[4]), r(1, 384));
}

#[test]
fn triple_product() {
    let w = zq(0, 6, 8);
    assert_eq!(
        jacobi_sum_form(&w, "z", "q").unwrap(),
        jacobi_product_form(&w, "z", "q").unwrap()
    );
}

#[test]
fn trace_examples() {
    let w = zq(1, 4, 2);
    let req = TraceRequest {
        factors: vec![(TraceOp::Epsilon0, "z".into())],
        q: "q".into(),
        n_max: 2,
    };
    let t = q_trace(&req, &w).unwrap();
    let zw = Window::new(vec![VarSpec::laurent("z", 1, 4)]).unwrap();
    assert_eq!(at_q(&t, 0), inv_varsigma(&zw, "z").unwrap());

    let req = TraceRequest {
        factors: vec![(TraceOp::Chern, "z".into())],
        ..req
    };
    let t = q_trace(&req, &w).unwrap();
    let zt = Window::new(vec![VarSpec::laurent("z", 1, 4)]).unwrap();
    let eig = |v: &[u32]| chern_eigenvalue(&Partition::new(v.to_vec()).unwrap(), &zt, "z").unwrap();
    assert!(at_q(&t, 0).is_zero());
    assert_eq!(at_q(&t, 1), Series::one(&zt));
    assert_eq!(at_q(&t, 2), &eig(&[2]) + &eig(&[1, 1]));
    assert_eq!(
        at_q(&t, 2).coeffs_of("z", 0, 2).unwrap(),
        vec![r(4, 1), r(0, 1), r(1, 1)]
    );
}

fn direct(ops: &[(TraceOp, &str)], w: &Arc<Window>) -> Series {
    let qmax = w.var("q").unwrap().max_degree as usize;
    let req = TraceRequest {
        factors: ops.iter().map(|(o, v)| (*o, v.to_string())).collect(),
        q: "q".into(),
        n_max: qmax,
    };
    q_trace(&req, w).unwrap()
}

#[test]
fn determinant_formula_one_point() {
    let w = zq(1, 6, 5);
    let bo = bloch_okounkov_rhs(&["z"], "q", &w).unwrap();
    assert_eq!(bo, direct(&[(TraceOp::Epsilon0, "z")], &w));
    let zw = Window::new(vec![VarSpec::laurent("z", 1, 6)]).unwrap();
    assert_eq!(at_q(&bo, 0), inv_varsigma(&zw, "z").unwrap());
    let w0 = zq(0, 6, 5);
    assert_eq!(
        trace_theorem_rhs(&["z"], "q", &w0).unwrap(),
        direct(&[(TraceOp::Chern, "z")], &w0)
    );
    assert_eq!(trace_theorem_rhs(&[], "q", &w0).unwrap(), direct(&[], &w0));
}

#[test]
fn determinant_formula_two_points() {
    let w = Window::new(vec![
        VarSpec::laurent("z1", 1, 3),
        VarSpec::laurent("z2", 1, 3),
        VarSpec::taylor("q", 3),
    ])
    .unwrap();
    let ops = [(TraceOp::Epsilon0, "z1"), (TraceOp::Epsilon0, "z2")];
    assert_eq!(
        bloch_okounkov_rhs(&["z1", "z2"], "q", &w).unwrap(),
        direct(&ops, &w)
    );
    let ops = [(TraceOp::Chern, "z1"), (TraceOp::Chern, "z2")];
    assert_eq!(
        trace_theorem_rhs(&["z1", "z2"], "q", &w).unwrap(),
        direct(&ops, &w)
    );
}
