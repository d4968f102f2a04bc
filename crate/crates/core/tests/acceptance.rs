//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! running time against the allowed budget; the process exits non-zero if
//! any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use tlwg_core::algebra::{
    chebyshev_delta, expand_at_infinity, parse_rational, BigRational, RationalFunction,
};
use tlwg_core::diagram::{generator_u, markov_trace, TLElement};
use tlwg_core::graph::{
    full_graph_edges, laurent_series, laurent_series_with, Policy, SubgraphBuilder,
};
use tlwg_core::jones_wenzl::{jw_via_weingarten, jw_wenzl_recursion, verify_jw};
use tlwg_core::nc2::{catalan, enumerate_nc2, join_block_count};
use tlwg_core::oracle::{weingarten_exact, Mode};
use tlwg_core::{PairVertex, Pairing};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn pr(s: &str) -> Pairing {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_two_by_two() -> Outcome {
    let w = weingarten_exact(2, Mode::Symbolic).map_err(|e| e.to_string())?;
    let (p, q) = (pr("{1,2}{3,4}"), pr("{1,4}{2,3}"));
    let d = RationalFunction::d();
    let one = RationalFunction::one();
    let pq = -&(&one / &(&(&d * &(&d * &d)) - &d));
    let qq = &one / &(&(&d * &d) - &one);
    ensure(w.entry(&p, &q) == Some(&pq), || {
        format!("Wg(p,q) = {:?}", w.entry(&p, &q))
    })?;
    ensure(w.entry(&q, &q) == Some(&qq), || {
        format!("Wg(q,q) = {:?}", w.entry(&q, &q))
    })?;
    ensure(
        pq.to_string() == "-1/(d^3 - d)" && qq.to_string() == "1/(d^2 - 1)",
        || "display".into(),
    )
}

fn c2_workout() -> Outcome {
    let (p, q) = (pr("{1,4}{2,3}{5,6}"), pr("{1,6}{2,5}{3,4}"));
    let s = laurent_series(&p, &q, 10, Policy::A).map_err(|e| e.to_string())?;
    ensure(s.length == 5 && s.sign == 1, || {
        format!("L={} sign={}", s.length, s.sign)
    })?;
    for (r, m) in s.m.iter().enumerate() {
        let expected = (BigUint::from(1u8) << (r + 1)) - 1u8;
        ensure(*m == expected, || format!("m_{r} = {m}"))?;
    }
    let w = weingarten_exact(3, Mode::Symbolic).map_err(|e| e.to_string())?;
    let series = expand_at_infinity(w.entry(&p, &q).unwrap(), 25);
    for e in 0..=25usize {
        let oracle = series.coeff_of(e as i64).ok_or("expansion too short")?;
        let graph = BigRational::from_integer(s.signed_coeff(e).ok_or("series too short")?);
        ensure(oracle == graph, || {
            format!("coefficient of d^-{e}: {oracle} vs {graph}")
        })?;
    }
    Ok(())
}

fn c3_strict_gap() -> Outcome {
    let (p, q) = (pr("{1,6}{2,5}{3,4}{7,8}"), pr("{1,2}{3,8}{4,7}{5,6}"));
    let s = laurent_series(&p, &q, 0, Policy::A).map_err(|e| e.to_string())?;
    let bound = 2 * 4 - join_block_count(&p, &q).unwrap();
    ensure(s.length == 8 && s.m[0] == BigUint::from(1u8), || {
        format!("L={} m0={}", s.length, s.m[0])
    })?;
    ensure(bound == 6 && s.length - bound == 2, || {
        format!("gap {}", s.length - bound)
    })?;
    let w = weingarten_exact(4, Mode::Symbolic).map_err(|e| e.to_string())?;
    let series = expand_at_infinity(w.entry(&p, &q).unwrap(), 10);
    ensure(
        series.offset == 8 && series.coeffs[0] == BigRational::from_integer(1.into()),
        || format!("oracle leading term at d^-{}", series.offset),
    )
}

fn c4_gram_identity() -> Outcome {
    let half = Duration::from_secs(60);
    let start = Instant::now();
    for k in 1..=4 {
        let w = weingarten_exact(k, Mode::Symbolic).map_err(|e| e.to_string())?;
        ensure(w.gram_product_is_identity(), || format!("symbolic k={k}"))?;
    }
    let took = start.elapsed();
    ensure(took <= half, || format!("symbolic part took {took:.2?}"))?;
    let start = Instant::now();
    for d in ["3", "7/2"] {
        for k in 1..=6 {
            let w = weingarten_exact(k, Mode::Numeric(parse_rational(d).unwrap()))
                .map_err(|e| e.to_string())?;
            ensure(w.gram_product_is_identity(), || {
                format!("numeric k={k} d={d}")
            })?;
        }
    }
    let took = start.elapsed();
    ensure(took <= half, || format!("numeric part took {took:.2?}"))
}

fn c5_laurent_against_oracle() -> Outcome {
    let r_max = 6;
    let mut builder = SubgraphBuilder::new(Policy::A);
    let mut pairs = 0;
    for k in 1..=4 {
        let w = weingarten_exact(k, Mode::Symbolic).map_err(|e| e.to_string())?;
        for p in &w.ordering {
            for q in &w.ordering {
                let s =
                    laurent_series_with(&mut builder, p, q, r_max).map_err(|e| e.to_string())?;
                let last = s.length + 2 * r_max;
                let series = expand_at_infinity(w.entry(p, q).unwrap(), last + 1);
                for e in 0..=last {
                    let oracle = series.coeff_of(e as i64).ok_or("expansion too short")?;
                    let graph = BigRational::from_integer(s.signed_coeff(e).unwrap());
                    ensure(oracle == graph, || {
                        format!("k={k} {p} {q} d^-{e}: {oracle} vs {graph}")
                    })?;
                }
                // one past the window on the odd side
                let odd = series.coeff_of(last as i64 + 1).unwrap();
                ensure(odd.is_zero(), || {
                    format!("k={k} {p} {q}: odd coefficient {odd}")
                })?;
                pairs += 1;
            }
        }
    }
    ensure(pairs == 1 + 4 + 25 + 196, || format!("{pairs} pairs"))
}

fn c6_policy_independence() -> Outcome {
    let mut a = SubgraphBuilder::new(Policy::A);
    let mut b = SubgraphBuilder::new(Policy::B);
    for k in 1..=4 {
        let ps = enumerate_nc2(k).unwrap();
        for p in &ps {
            for q in &ps {
                let sa = laurent_series_with(&mut a, p, q, 6).map_err(|e| e.to_string())?;
                let sb = laurent_series_with(&mut b, p, q, 6).map_err(|e| e.to_string())?;
                ensure(sa == sb, || format!("{p} {q}: {sa:?} vs {sb:?}"))?;
            }
        }
    }
    Ok(())
}

fn c7_parity() -> Outcome {
    let mut violations = 0usize;
    let mut edges = 0usize;
    for k in 1..=4 {
        let ps = enumerate_nc2(k).unwrap();
        for p in &ps {
            for q in &ps {
                let v = PairVertex::Pair(p.clone(), q.clone());
                let j = v.join_blocks();
                for u in full_graph_edges(&v) {
                    edges += 1;
                    let ju = u.join_blocks();
                    if ju + 1 != j && ju != j + 1 {
                        violations += 1;
                    }
                }
            }
        }
    }
    ensure(violations == 0 && edges > 0, || {
        format!("{violations} violations over {edges} edges")
    })
}

fn c8_jones_wenzl() -> Outcome {
    for k in 1..=5 {
        let rec = jw_wenzl_recursion(k).map_err(|e| e.to_string())?;
        let wg = jw_via_weingarten(k).map_err(|e| e.to_string())?;
        ensure(rec == wg, || format!("k={k}: constructions differ"))?;
        ensure(rec.mul(&rec).unwrap() == rec, || {
            format!("k={k}: not idempotent")
        })?;
        for i in 1..k {
            let u = TLElement::basis(&generator_u(i, k).unwrap());
            ensure(u.mul(&rec).unwrap().is_zero(), || {
                format!("k={k}: u_{i} q != 0")
            })?;
            ensure(rec.mul(&u).unwrap().is_zero(), || {
                format!("k={k}: q u_{i} != 0")
            })?;
        }
        let tr = markov_trace(&rec);
        ensure(
            tr == RationalFunction::from_poly(chebyshev_delta(k)),
            || format!("k={k}: Tr = {tr}"),
        )?;
        verify_jw(k).map_err(|e| e.to_string())?;
    }
    let q2 = jw_wenzl_recursion(2).unwrap();
    let c = q2.coeff(&generator_u(1, 2).unwrap());
    ensure(c == -RationalFunction::d_pow(-1), || {
        format!("cup-cap coefficient {c}")
    })
}

fn c9_non_zero() -> Outcome {
    for k in 1..=5 {
        for d in ["2", "3"] {
            let w = weingarten_exact(k, Mode::Numeric(parse_rational(d).unwrap()))
                .map_err(|e| e.to_string())?;
            for p in &w.ordering {
                for q in &w.ordering {
                    ensure(!w.value(p, q).unwrap().is_zero(), || {
                        format!("Wg({p},{q}) = 0 at d={d}")
                    })?;
                }
            }
        }
        let q = jw_wenzl_recursion(k).map_err(|e| e.to_string())?;
        for p in enumerate_nc2(k).unwrap() {
            ensure(!q.coeff(&p).is_zero(), || format!("q_{k} misses {p}"))?;
        }
    }
    Ok(())
}

fn c10_counts() -> Outcome {
    for k in 1..=8 {
        let n = enumerate_nc2(k).map_err(|e| e.to_string())?.len() as u128;
        ensure(n == catalan(k), || format!("k={k}: {n} pairings"))?;
    }
    let c8 = BigInt::from(enumerate_nc2(8).unwrap().len());
    ensure(c8 == BigInt::from(1430), || format!("C_8 = {c8}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "1 two-by-two Weingarten entries",
            Duration::from_secs(1),
            c1_two_by_two,
        ),
        (
            "2 workout pair series through d^-25",
            Duration::from_secs(5),
            c2_workout,
        ),
        (
            "3 strict gap L - (2k - |p v q|) = 2",
            Duration::from_secs(10),
            c3_strict_gap,
        ),
        (
            "4 G Wg = I (symbolic k<=4, numeric k<=6)",
            Duration::from_secs(120),
            c4_gram_identity,
        ),
        (
            "5 Laurent series equal oracle expansion, k<=4",
            Duration::from_secs(300),
            c5_laurent_against_oracle,
        ),
        (
            "6 policies A and B agree, k<=4",
            Duration::from_secs(300),
            c6_policy_independence,
        ),
        (
            "7 parity of every edge, k<=4",
            Duration::from_secs(300),
            c7_parity,
        ),
        (
            "8 Jones-Wenzl projections, k<=5",
            Duration::from_secs(120),
            c8_jones_wenzl,
        ),
        (
            "9 non-zero coefficients, k<=5",
            Duration::from_secs(300),
            c9_non_zero,
        ),
        (
            "10 Catalan counts, k<=8",
            Duration::from_secs(5),
            c10_counts,
        ),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(took <= budget, || {
                format!("took {took:.2?}, budget {budget:?}")
            })
        });
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({took:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({took:.2?}): {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
