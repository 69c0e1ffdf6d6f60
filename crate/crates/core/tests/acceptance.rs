//! The acceptance criteria, one line each. Every criterion is an exact
//! coefficient comparison; the time budget is printed next to the elapsed
//! time but only correctness decides pass or fail.

use std::time::{Duration, Instant};

use fockseries::verify::{self, Check};

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Vec<Check>,
}

fn criteria() -> Vec<Criterion> {
    let s = Duration::from_secs;
    vec![
        Criterion {
            name: "Heisenberg relations, |m|,|n| <= 5, |λ| <= 8",
            budget: s(5),
            run: || vec![verify::heisenberg(5, 8)],
        },
        Criterion {
            name: "pairings in both bases, |λ|,|μ| <= 8",
            budget: s(5),
            run: || vec![verify::pairing(8)],
        },
        Criterion {
            name: "chern eigenvalue = regularized ε0 form, |λ| <= 12, z^12",
            budget: s(10),
            run: || vec![verify::chern_identity(12, 12)],
        },
        Criterion {
            name: "1-point F•: closed form = diagonal = commutator, |λ| <= 8, z^10",
            budget: s(60),
            run: || vec![verify::one_point_routes(8, 10)],
        },
        Criterion {
            name: "1-point G: closed form and relation = direct, |λ| <= 8",
            budget: s(30),
            run: || vec![verify::g_one_point(8, 8)],
        },
        Criterion {
            name: "G inclusion-exclusion = direct, N <= 3, |λ| <= 6, z^6",
            budget: s(60),
            run: || {
                (1..=3)
                    .map(|n| verify::inclusion_exclusion(n, 6, 6))
                    .collect()
            },
        },
        Criterion {
            name: "Jacobi triple product, q^12, z^10",
            budget: s(10),
            run: || vec![verify::jacobi_triple_product(12, 10)],
        },
        Criterion {
            name: "determinant formula = direct ε0 trace, N=1,2 q^10 z^8, N=3 q^6 z^8",
            budget: s(300),
            run: || {
                vec![
                    verify::bloch_okounkov(1, 10, 8),
                    verify::bloch_okounkov(2, 10, 8),
                    verify::bloch_okounkov(3, 6, 8),
                ]
            },
        },
        Criterion {
            name: "trace theorem = direct 𝔊 trace, N <= 2, q^8",
            budget: s(120),
            run: || {
                vec![
                    verify::trace_theorem(1, 8, 8),
                    verify::trace_theorem(2, 8, 8),
                ]
            },
        },
        Criterion {
            name: "Tr_q I coefficients are p(n), n <= 20",
            budget: s(1),
            run: || vec![verify::partition_numbers(20)],
        },
        Criterion {
            name: "lowest Toda equation, m in {-1,0,1}, K=3, D=4, n_max=4",
            budget: s(300),
            run: || (-1..=1).map(|m| verify::toda_lowest(m, 3, 4, 4)).collect(),
        },
        Criterion {
            name: "reduced Toda identity through w^4, x1^6; [w^2] = cosh(x1)/2",
            budget: s(60),
            run: || vec![verify::toda_reduced(4, 6)],
        },
        Criterion {
            name: "Res (e^(mz)-1)/ς² = m for |m| <= 5; c^(0) = 0",
            budget: s(1),
            run: || vec![verify::c_constants_sanity(5, 8)],
        },
    ]
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for (i, c) in criteria().into_iter().enumerate() {
        let t = Instant::now();
        let checks = (c.run)();
        let el = t.elapsed();
        let ok = checks.iter().all(Check::passed);
        println!(
            "{} {:>2} {} ({:.2?}, budget {:?})",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            c.name,
            el,
            c.budget
        );
        for ch in checks.iter().filter(|ch| !ch.passed()) {
            println!("        {ch}");
        }
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
