use super::*;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn zwin(pole: u32, deg: u32) -> Arc<Window> {
    Window::new(vec![VarSpec::laurent("z", pole, deg)]).unwrap()
}

fn uni(w: &Arc<Window>, lowest: i32, c: &[Rational]) -> Series {
    Series::univariate(w, w.vars()[0].name.as_str(), lowest, c).unwrap()
}

fn varsigma(w: &Arc<Window>) -> Series {
    let p = Series::exp_linear(w, "z", &r(1, 2), 99).unwrap();
    let m = Series::exp_linear(w, "z", &r(-1, 2), 99).unwrap();
    &p - &m
}

#[test]
fn polynomial_identity() {
    let w = zwin(0, 4);
    let a = uni(&w, 0, &[r(1, 1), r(1, 1)]);
    let b = uni(&w, 0, &[r(1, 1), r(-1, 1)]);
    assert_eq!(&a * &b, uni(&w, 0, &[r(1, 1), r(0, 1), r(-1, 1)]));
}

#[test]
fn pole_cancellation() {
    let w = zwin(1, 3);
    let a = uni(&w, -1, &[r(1, 1)]);
    let b = Series::var(&w, "z").unwrap();
    assert_eq!(&a * &b, Series::one(&w));
}

#[test]
fn varsigma_squared_is_frozen() {
    let w = zwin(0, 6);
    let s = varsigma(&w);
    let expect = uni(
        &w,
        0,
        &[
            r(0, 1),
            r(0, 1),
            r(1, 1),
            r(0, 1),
            r(1, 12),
            r(0, 1),
            r(1, 360),
        ],
    );
    assert_eq!(&s * &s, expect);
}

#[test]
fn mismatched_windows_are_structural_errors() {
    let a = Series::one(&zwin(0, 3));
    let b = Series::one(&zwin(0, 4));
    assert!(matches!(
        series_arith(&a, &b, ArithOp::Add),
        Err(Error::Structural(_))
    ));
}

#[test]
fn invert_varsigma_is_frozen() {
    let w = zwin(1, 5);
    let inv = varsigma(&w).invert(&zwin(1, 4)).unwrap();
    assert_eq!(
        inv,
        uni(
            &zwin(1, 4),
            -1,
            &[r(1, 1), r(0, 1), r(-1, 24), r(0, 1), r(7, 5760)]
        )
    );
}

#[test]
fn invert_geometric_and_unit() {
    let w = Window::new(vec![VarSpec::taylor("q", 5)]).unwrap();
    let a = uni(&w, 0, &[r(1, 1), r(-1, 1)]);
    assert_eq!(a.invert(&w).unwrap(), uni(&w, 0, &vec![r(1, 1); 6]));
    assert_eq!(Series::one(&w).invert(&w).unwrap(), Series::one(&w));
    assert!(matches!(
        Series::zero(&w).invert(&w),
        Err(Error::Division(_))
    ));
}

#[test]
fn invert_reports_pole_overflow() {
    let w = zwin(0, 4);
    let z = Series::var(&w, "z").unwrap();
    assert!(matches!(z.invert(&w), Err(Error::Window(_))));
}

#[test]
fn invert_exponential_ring_unit() {
    // 1 - q(X^2 + X^-2) is a unit once q is a power-series variable
    let w = Window::new(vec![VarSpec::laurent("X", 12, 12), VarSpec::taylor("q", 3)]).unwrap();
    let a = Series::from_terms(
        &w,
        vec![
            (vec![0, 0], r(1, 1)),
            (vec![2, 1], r(-1, 1)),
            (vec![-2, 1], r(-1, 1)),
        ],
    )
    .unwrap();
    let inv = a.invert(&w).unwrap();
    assert_eq!(&a * &inv, Series::one(&w));
    assert_eq!(inv.coeff(&[0, 2]), r(2, 1));
    // too narrow a window is detected rather than silently truncated
    let narrow = Window::new(vec![VarSpec::laurent("X", 3, 3), VarSpec::taylor("q", 3)]).unwrap();
    assert!(matches!(
        a.into_window(&narrow).unwrap().invert(&narrow),
        Err(Error::Window(_))
    ));
}

#[test]
fn exp_examples() {
    let w = zwin(0, 3);
    let z = Series::var(&w, "z").unwrap();
    assert_eq!(
        z.exp().unwrap(),
        uni(&w, 0, &[r(1, 1), r(1, 1), r(1, 2), r(1, 6)])
    );
    assert_eq!(Series::zero(&w).exp().unwrap(), Series::one(&w));
    assert!(matches!(Series::one(&w).exp(), Err(Error::Domain(_))));

    let w2 = Window::new(vec![VarSpec::taylor("t1", 4), VarSpec::taylor("s1", 4)]).unwrap();
    let ts = Series::monomial(&w2, &[1, 1], r(1, 1)).unwrap();
    let e = ts.exp().unwrap();
    for n in 0..=4 {
        assert_eq!(
            e.coeff(&[n, n]),
            Rational::factorial(n as u32).recip().unwrap()
        );
    }
    assert_eq!(e.len(), 5);
    assert_eq!(e.log().unwrap(), ts);
}

#[test]
fn exp_linear_examples() {
    let w = zwin(0, 5);
    assert_eq!(
        Series::exp_linear(&w, "z", &r(0, 1), 5).unwrap(),
        Series::one(&w)
    );
    assert_eq!(
        Series::exp_linear(&w, "z", &r(1, 2), 2).unwrap(),
        uni(&w, 0, &[r(1, 1), r(1, 2), r(1, 8)])
    );
    assert_eq!(
        Series::exp_linear(&w, "z", &r(-3, 2), 1).unwrap(),
        uni(&w, 0, &[r(1, 1), r(-3, 2)])
    );
    assert!(matches!(
        Series::exp_linear(&w, "q", &r(1, 1), 1),
        Err(Error::Structural(_))
    ));
}

#[test]
fn log_examples() {
    let w = Window::new(vec![VarSpec::taylor("q", 3)]).unwrap();
    assert!(Series::one(&w).log().unwrap().is_zero());
    let a = uni(&w, 0, &[r(1, 1), r(1, 1)]);
    assert_eq!(
        a.log().unwrap(),
        uni(&w, 0, &[r(0, 1), r(1, 1), r(-1, 2), r(1, 3)])
    );
    assert!(matches!(
        uni(&w, 0, &[r(2, 1)]).log(),
        Err(Error::Domain(_))
    ));
}

#[test]
fn derivative_examples() {
    let w = zwin(0, 4);
    let z2 = uni(&w, 2, &[r(1, 1)]);
    let d = z2.partial_derivative("z").unwrap();
    assert_eq!(d.vars()[0].max_degree, 3);
    assert_eq!(d.coeff(&[1]), r(2, 1));
    assert_eq!(d.len(), 1);

    let w2 = Window::new(vec![VarSpec::taylor("t1", 3), VarSpec::taylor("s1", 3)]).unwrap();
    let ts = Series::monomial(&w2, &[1, 1], r(1, 1)).unwrap();
    let d = ts.partial_derivative("t1").unwrap();
    assert_eq!(d.terms().collect::<Vec<_>>(), vec![(vec![0, 1], &r(1, 1))]);
    assert!(matches!(
        ts.partial_derivative("x"),
        Err(Error::Structural(_))
    ));

    let w3 = zwin(1, 4);
    let d = uni(&w3, -1, &[r(1, 1)]).partial_derivative("z").unwrap();
    assert_eq!(d.vars()[0].max_pole, 2);
    assert_eq!(d.coeff(&[-2]), r(-1, 1));
}

#[test]
fn weighted_cap_truncates_products() {
    let w = Window::with_cap(
        vec![VarSpec::taylor("t", 4), VarSpec::taylor("s", 4)],
        DegreeCap {
            weights: vec![1, 2],
            max: 4,
        },
    )
    .unwrap();
    let t = Series::var(&w, "t").unwrap();
    let s = Series::var(&w, "s").unwrap();
    let a = &t + &s;
    let sq = &a * &a;
    // t^2 + 2ts + s^2 all have weight <= 4
    assert_eq!(sq.len(), 3);
    let cube = &sq * &a;
    // t^3 (3) and t^2 s (4) survive; t s^2 (5) and s^3 (6) do not
    assert_eq!(cube.len(), 2);
    assert_eq!(cube.coeff(&[2, 1]), r(3, 1));
}

#[test]
fn exact_division() {
    let w = Window::new(vec![
        VarSpec::laurent("X1", 6, 6),
        VarSpec::laurent("X2", 6, 6),
        VarSpec::taylor("q", 2),
    ])
    .unwrap();
    let t = |e: [i32; 3], c: i64| (e.to_vec(), r(c, 1));
    // (X1 X2 - X1^-1 X2^-1)
    let d = Series::from_terms(&w, vec![t([1, 1, 0], 1), t([-1, -1, 0], -1)]).unwrap();
    let f =
        Series::from_terms(&w, vec![t([2, 0, 0], 3), t([0, -1, 1], 5), t([0, 0, 2], 1)]).unwrap();
    let p = &d * &f;
    assert_eq!(p.div_exact(&d).unwrap(), f);
    let not_divisible = &p + &Series::one(&w);
    assert!(matches!(
        not_divisible.div_exact(&d),
        Err(Error::Division(_))
    ));
    let qd = Series::var(&w, "q").unwrap();
    assert!(matches!(p.div_exact(&qd), Err(Error::Structural(_))));
}

#[test]
fn into_window_maps_by_name() {
    let small = zwin(1, 3);
    let big = Window::new(vec![VarSpec::taylor("q", 2), VarSpec::laurent("z", 1, 2)]).unwrap();
    let a = uni(&small, -1, &[r(1, 1), r(2, 1), r(3, 1), r(4, 1), r(5, 1)]);
    let b = a.into_window(&big).unwrap();
    assert_eq!(b.coeff(&[0, -1]), r(1, 1));
    assert_eq!(b.coeff(&[0, 2]), r(4, 1));
    assert_eq!(b.len(), 4);
    let tight = zwin(0, 3);
    assert!(matches!(a.into_window(&tight), Err(Error::Window(_))));
}

#[test]
fn json_round_trip_and_format() {
    let w = Window::new(vec![VarSpec::laurent("z", 1, 3), VarSpec::taylor("q", 2)]).unwrap();
    let a = Series::from_terms(&w, vec![(vec![-1, 0], r(1, 1)), (vec![1, 2], r(-7, 3))]).unwrap();
    let s = a.to_json();
    assert_eq!(
        s,
        r#"{"vars":[{"name":"z","max_pole":1,"max_degree":3},{"name":"q","max_pole":0,"max_degree":2}],"terms":[{"exp":[-1,0],"coef":"1/1"},{"exp":[1,2],"coef":"-7/3"}]}"#
    );
    let b = Series::from_json(&s).unwrap();
    assert_eq!(a, b);
    assert_eq!(b.to_json(), s);
    let bad = s.replace("[1,2]", "[1,3]");
    assert!(Series::from_json(&bad).is_err());
}

#[test]
fn display_is_readable() {
    let w = zwin(1, 3);
    let a = uni(&w, -1, &[r(1, 1), r(0, 1), r(-1, 24)]);
    assert_eq!(a.to_string(), "1*z^-1 + -1/24*z");
}
