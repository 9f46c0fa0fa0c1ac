//! Acceptance suite: one line per criterion, non-zero exit on any failure.
//!
//! Run with `cargo test -p qpos-core --test acceptance --release`.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use qpos::generating::{
    cprime_closed, cprime_definitional, dprime_definitional, dprime_via_relation, family_series,
    gauss_product, special_forms, t2_series, triangular_indicator, SPECIAL_PARAMS,
};
use qpos::oracle::weighted_counts;
use qpos::positivity::{
    self, c23_case_against, c23_term, c41_decomposition_check, c41_needs_split, circle_bound_check,
    circle_count, conjecture_scan, f_checks, keysum_check, keysum_scan,
    lemma52_decomposition_check, lemma_a_coeff, negative_indices, run_scans, t2_direct,
    ConjectureTarget, Parity,
};
use qpos::{first_mismatch, Family, FamilyParams, Series, SeriesKind, Sign};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fp(k: u32, m: u32) -> FamilyParams {
    FamilyParams::new(k, m).expect("positive parameters")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same(a: &Series, b: &Series, what: &str) -> Result<(), String> {
    match first_mismatch(a, b) {
        None if a.order() == b.order() => Ok(()),
        None => Err(format!(
            "{what}: orders differ ({} vs {})",
            a.order(),
            b.order()
        )),
        Some(m) => Err(format!(
            "{what}: q^{} has {} vs {}",
            m.index, m.left, m.right
        )),
    }
}

/// 1. Defining C' sum equals its transformed closed form on [1..6]^2 at order 300.
fn closed_form_identity() -> Outcome {
    for k in 1..=6 {
        for m in 1..=6 {
            let p = fp(k, m);
            same(
                &cprime_definitional(p, 300),
                &cprime_closed(p, 300),
                &format!("C'({k},{m})"),
            )?;
        }
    }
    Ok("36 pairs equal to order 300".into())
}

/// 2. D' from the relation with C' equals the defining D' sum on [1..4]^2.
fn d_relation() -> Outcome {
    for k in 1..=4 {
        for m in 1..=4 {
            let p = fp(k, m);
            let via = dprime_via_relation(p, 300).map_err(|e| e.to_string())?;
            same(&via, &dprime_definitional(p, 300), &format!("D'({k},{m})"))?;
        }
    }
    Ok("16 pairs equal to order 300".into())
}

/// 3. Hand-simplified forms equal the defining sums; C'(2,1,n) = n.
fn special_forms_hold() -> Outcome {
    let mut forms = 0;
    for (k, m) in SPECIAL_PARAMS {
        let p = fp(k, m);
        let base = cprime_definitional(p, 300);
        for form in special_forms(p, 300) {
            same(&form.series, &base, form.name)?;
            forms += 1;
        }
    }
    let c21 = cprime_definitional(fp(2, 1), 300);
    for n in 1..=300 {
        ensure(c21.coeffs()[n] == BigInt::from(n), || {
            format!("C'(2,1,{n}) = {}", c21.coeffs()[n])
        })?;
    }
    Ok(format!(
        "{forms} forms equal to order 300; C'(2,1,n) = n for n <= 300"
    ))
}

/// 4. Enumeration agrees with signed and unsigned series for n <= 30.
fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for family in [Family::C, Family::D] {
        for k in 1..=3 {
            for m in 1..=3 {
                let p = fp(k, m);
                let signed = family_series(SeriesKind::new(family, true), p, 30);
                let unsigned = family_series(SeriesKind::new(family, false), p, 30);
                for n in 0..=30u32 {
                    let w = weighted_counts(family, p, n);
                    let i = n as usize;
                    ensure(BigInt::from(w.difference()) == signed.coeffs()[i], || {
                        format!(
                            "{family:?}({k},{m}) n={n}: difference {} vs series {}",
                            w.difference(),
                            signed.coeffs()[i]
                        )
                    })?;
                    ensure(BigInt::from(w.total()) == unsigned.coeffs()[i], || {
                        format!(
                            "{family:?}({k},{m}) n={n}: total {} vs series {}",
                            w.total(),
                            unsigned.coeffs()[i]
                        )
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (family, k, m, n) cells match"))
}

/// 5. Negative coefficients quoted for C'(2,5) and D'(2,3).
fn quoted_negatives() -> Outcome {
    let c25 = negative_indices(&cprime_closed(fp(2, 5), 900));
    let expect = vec![688, 690, 692, 887, 889, 891, 893];
    ensure(c25.negative_indices == expect, || {
        format!("C'(2,5) negatives {:?}", c25.negative_indices)
    })?;
    let d23 = negative_indices(&dprime_definitional(fp(2, 3), 500));
    ensure(d23.negative_indices == vec![10, 22], || {
        format!("D'(2,3) negatives {:?}", d23.negative_indices)
    })?;
    Ok("C'(2,5) to 900: 688 690 692 887 889 891 893; D'(2,3) to 500: 10 22".into())
}

/// 6. No negative coefficient in C'(2,3), C'(4,1), D'(2,1) up to 1000.
fn proven_positivity() -> Outcome {
    for (label, s) in [
        ("C'(2,3)", cprime_closed(fp(2, 3), 1000)),
        ("C'(4,1)", cprime_closed(fp(4, 1), 1000)),
        (
            "D'(2,1)",
            dprime_via_relation(fp(2, 1), 1000).map_err(|e| e.to_string())?,
        ),
    ] {
        let r = negative_indices(&s);
        ensure(r.is_nonnegative(), || {
            format!("{label} negative at {:?}", r.negative_indices)
        })?;
    }
    Ok("C'(2,3), C'(4,1), D'(2,1) nonnegative to order 1000".into())
}

/// 7. Coefficient lemmas, partial fractions and the 1 - T1 - T2 - T3 cases.
fn c23_machinery() -> Outcome {
    for n in 0..=10usize {
        for shift in 0..=5usize {
            let mut s = Series::monomial(shift, 1000);
            s.div_binomial(Sign::Plus, 1);
            s.div_binomial(Sign::Minus, 2 * n + 3);
            for target in 0..=1000 {
                let v = lemma_a_coeff(n as u64, shift as u64, target as u64);
                ensure(BigInt::from(v) == s.coeffs()[target], || {
                    format!(
                        "lemma coefficient n={n} A={shift} N={target}: {v} vs {}",
                        s.coeffs()[target]
                    )
                })?;
            }
        }
    }
    for n in 0..=20 {
        if let Some(m) = lemma52_decomposition_check(n, 300) {
            return Err(format!("partial fractions n={n} differ at q^{}", m.index));
        }
    }
    for n in 0..=20u64 {
        let expanded = c23_term(n as usize, 400);
        for target in 1..=400 {
            let v = c23_case_against(n, target, &expanded).map_err(|e| e.to_string())?;
            ensure(v >= 0, || format!("case value {v} at n={n} N={target}"))?;
        }
    }
    Ok("lemma coefficients (n<=10, A<=5, N<=1000), partial fractions (n<=20), cases (n<=20, N<=400)".into())
}

/// 8. Two-term split for every admissible n <= 30.
fn c41_machinery() -> Outcome {
    let admissible: Vec<usize> = (2..=30).filter(|&n| c41_needs_split(n)).collect();
    for &n in &admissible {
        let c = c41_decomposition_check(n, 300).map_err(|e| e.to_string())?;
        ensure(c.passed(), || format!("split fails at n={n}: {c:?}"))?;
    }
    for n in (0..=30).filter(|&n| !c41_needs_split(n)) {
        ensure(positivity::c41_divisible_case_nonnegative(n, 300), || {
            format!("divisible case n={n} has a negative coefficient")
        })?;
    }
    Ok(format!("split verified for n in {admissible:?}"))
}

/// 9. Triangular numbers, key sum, lattice points and calculus constants.
fn triangular_machinery() -> Outcome {
    let t2 = t2_series(2000);
    for n in 0..=2000 {
        ensure(
            BigInt::from(t2_direct(n as u64).t2) == t2.coeffs()[n],
            || {
                format!(
                    "t2({n}) direct {} vs series {}",
                    t2_direct(n as u64).t2,
                    t2.coeffs()[n]
                )
            },
        )?;
    }
    let tri = triangular_indicator(2000);
    same(&gauss_product(2000), &tri, "Gauss product")?;
    same(&tri.mul(&tri), &t2, "t2 as square")?;

    let keys = keysum_scan(5000);
    for k in &keys {
        ensure(k.holds, || {
            format!("key sum fails at N={}: {} > {}", k.n, k.sum, k.bound)
        })?;
        if k.n % 2 == 0 && k.n > 90 {
            ensure(k.margin() > 0, || {
                format!("even margin not positive at N={}", k.n)
            })?;
        }
    }
    for n in [0u64, 1, 2, 91, 777, 5000] {
        ensure(keysum_check(n) == keys[n as usize], || {
            format!("key sum routes differ at {n}")
        })?;
    }

    let table = positivity::t2_table(16 * 500 + 20);
    for n in 0..=500u64 {
        for parity in [Parity::Even, Parity::Odd] {
            let top = parity.top(n);
            let sum: u64 = (0..=top / 2).map(|j| table[(top - 2 * j) as usize]).sum();
            let count = circle_count(n, parity);
            ensure(count == sum, || {
                format!("circle {parity:?} N={n}: {count} vs {sum}")
            })?;
        }
    }
    for n in 0..=1000 {
        let b = circle_bound_check(n);
        ensure(b.holds, || {
            format!("lattice bound fails at N={n}: {} > {}", b.count, b.bound)
        })?;
    }

    let calc = f_checks();
    ensure(calc.passed(), || format!("{calc:?}"))?;
    Ok(format!(
        "t2 to 2000, key sum to 5000, circles to 500/1000, f(90)={:.4}, 2-pi/2-4/11={:.5}",
        calc.f_at_90, calc.slope_constant
    ))
}

/// 10. Evidence for the open positivity statements within the scanned window.
fn conjecture_evidence() -> Outcome {
    for k in 1..=10 {
        let r = conjecture_scan(ConjectureTarget::Ck1 { k }, 500).map_err(|e| e.to_string())?;
        ensure(r.is_nonnegative(), || {
            format!("C'({k},1) negative at {:?}", r.negative_indices)
        })?;
    }
    let c24 = conjecture_scan(ConjectureTarget::C24, 1000).map_err(|e| e.to_string())?;
    ensure(c24.is_nonnegative(), || {
        format!("C'(2,4) negative at {:?}", c24.negative_indices)
    })?;
    let d22 = conjecture_scan(ConjectureTarget::D22, 500).map_err(|e| e.to_string())?;
    ensure(d22.is_nonnegative(), || {
        format!("D'(2,2) negative at {:?}", d22.negative_indices)
    })?;

    let order = 500;
    let mut largest = Vec::new();
    for k in 2..=4 {
        for m in 1..k {
            let r = conjecture_scan(ConjectureTarget::Dkm { k, m }, order)
                .map_err(|e| e.to_string())?;
            let last = r.largest_negative();
            // the whole back half of the window must be clean
            ensure(last.is_none_or(|i| i <= order / 2), || {
                format!("D'({k},{m}) still negative at {last:?}")
            })?;
            largest.push(format!(
                "D'({k},{m}):{}",
                last.map_or("none".into(), |i| i.to_string())
            ));
        }
    }
    Ok(format!(
        "Ck1 (k<=10) to 500, C24 to 1000, D22 to 500 clean; largest negative {}",
        largest.join(" ")
    ))
}

/// 11. Scan reports serialize identically for 1, 4 and 8 workers.
fn determinism() -> Outcome {
    let targets = [
        ConjectureTarget::C2m { m: 5 },
        ConjectureTarget::D23,
        ConjectureTarget::Dkm { k: 4, m: 3 },
        ConjectureTarget::Ck1 { k: 4 },
        ConjectureTarget::C24,
    ];
    let render = |threads| -> Result<String, String> {
        let r = run_scans(&targets, 900, threads).map_err(|e| e.to_string())?;
        serde_json::to_string(&r).map_err(|e| e.to_string())
    };
    let one = render(1)?;
    for threads in [4, 8] {
        ensure(render(threads)? == one, || {
            format!("output differs with {threads} threads")
        })?;
    }
    Ok(format!(
        "{} bytes identical across 1/4/8 threads",
        one.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 closed form identity", closed_form_identity),
        ("2 D' relation", d_relation),
        ("3 special forms", special_forms_hold),
        ("4 oracle equivalence", oracle_equivalence),
        ("5 quoted negatives", quoted_negatives),
        ("6 proven positivity", proven_positivity),
        ("7 C'(2,3) coefficient machinery", c23_machinery),
        ("8 C'(4,1) decomposition", c41_machinery),
        ("9 triangular and lattice machinery", triangular_machinery),
        ("10 conjecture evidence", conjecture_evidence),
        ("11 scan determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.1}s): {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
