//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `cargo test --test acceptance -- --nocapture`
//! to see them).
//!
//! Three criteria assert closed-form identities that high-precision
//! evaluation shows to be subtly wrong in the source formulas: the
//! reflection identity's affine coefficient reads (2q-3) where the true
//! coefficient is (q-1) (they agree only at q = 2), and even the
//! corrected elementary form omits an exponentially small theta-type
//! series (~3e-24 at q = 2, ~7e-42 at q = 3/2, ~6e-10 at q = 5). Those
//! criteria are implemented exactly as stated and FAIL honestly; a
//! companion test in each case verifies the completed identity
//! (corrected affine + theta) to the stated tolerance, isolating the
//! defect in the formula rather than in this implementation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use qzeta::precision::pow10;
use qzeta::{
    bound_string, decimal_string, dimension_report, extract_laurent, find_relation, gamma0,
    gamma1, kappa, l_delta_digamma, l_delta_partial, l_periodic_partial, probe_conjecture_a,
    recover_t2_relation, verify_cot_bernoulli, verify_t2, AffineForm, BoundedValue,
    ControlColumn, CyclotomicElement, FnBasis, Gamma1Form, PrecisionBudget, QPoint, QValue,
    RelationStatus, ResidueSystem, Verdict,
};

use astro_float::{BigFloat, RoundingMode};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn point(q: &BigRational, xn: i64, xd: i64) -> QPoint {
    QPoint::from_rationals(q.clone(), rat(xn, xd)).unwrap()
}

fn tol(d: i64) -> BigFloat {
    pow10(-d, RoundingMode::Down)
}

fn grid_q() -> Vec<BigRational> {
    vec![rat(3, 2), rat(2, 1), rat(5, 1)]
}

fn grid_x() -> Vec<(i64, i64)> {
    vec![(1, 5), (1, 3), (1, 2), (2, 3), (4, 5)]
}

const REFLECTION_GRID_B: [i64; 6] = [3, 4, 5, 7, 8, 12];

fn coprime_half(b: i64) -> Vec<i64> {
    (1..b)
        .filter(|a| 2 * a < b && num_integer::gcd(*a, b) == 1)
        .collect()
}

/// C1: gamma_0 closed form vs Laurent extraction to >= 30 digits at a
/// 60-digit budget, on the full (q, x) grid, each point under 60 s.
#[test]
fn c01_gamma0_closed_form_matches_extraction() {
    let budget = PrecisionBudget::new(60).unwrap();
    let p = budget.work_bits();
    let mut worst = BigFloat::from_i64(0, 64);
    for q in grid_q() {
        for (xn, xd) in grid_x() {
            let started = std::time::Instant::now();
            let pt = point(&q, xn, xd);
            let closed = gamma0(&pt, &budget).unwrap();
            let extracted = extract_laurent(&pt, &budget).unwrap();
            let d = closed.distance_bound(&extracted.gamma0, p);
            assert!(
                d.cmp(&tol(30)).unwrap() <= 0,
                "q={} x={}/{}: gamma0 mismatch {}",
                q, xn, xd, decimal_string(&d, 5)
            );
            assert!(started.elapsed().as_secs() < 60, "q={} x={}/{} too slow", q, xn, xd);
            if d.cmp(&worst).unwrap() > 0 {
                worst = d;
            }
        }
    }
    println!(
        "ACCEPTANCE C1: PASS - gamma0 closed form vs extraction agrees to >= 30 digits on the 3x5 grid (worst gap {})",
        decimal_string(&worst, 3)
    );
}

/// C2: exactly one of the two gamma_1 closed-form candidates matches the
/// extraction oracle where log(q-1) != 0; both coincide and match at q=2.
#[test]
fn c02_gamma1_candidate_adjudication() {
    let budget = PrecisionBudget::new(80).unwrap();
    let p = budget.work_bits();
    for q in [rat(3, 2), rat(5, 1)] {
        for (xn, xd) in grid_x() {
            let pt = point(&q, xn, xd);
            let data = extract_laurent(&pt, &budget).unwrap();
            let printed = gamma1(&pt, &budget, Gamma1Form::AsPrinted).unwrap();
            let unhalved = gamma1(&pt, &budget, Gamma1Form::UnhalvedLogTerm).unwrap();
            let d_printed = data.gamma1.distance_bound(&printed, p);
            let d_unhalved = data.gamma1.distance_bound(&unhalved, p);
            let printed_ok = d_printed.cmp(&tol(20)).unwrap() <= 0;
            let unhalved_ok = d_unhalved.cmp(&tol(20)).unwrap() <= 0;
            assert!(
                printed_ok ^ unhalved_ok,
                "q={} x={}/{}: exactly one candidate must match (printed {} unhalved {})",
                q, xn, xd,
                decimal_string(&d_printed, 4),
                decimal_string(&d_unhalved, 4)
            );
            assert!(printed_ok, "the matching candidate is the printed (halved) form");
        }
    }
    let q2 = rat(2, 1);
    for (xn, xd) in grid_x() {
        let pt = point(&q2, xn, xd);
        let data = extract_laurent(&pt, &budget).unwrap();
        for form in [Gamma1Form::AsPrinted, Gamma1Form::UnhalvedLogTerm] {
            let v = gamma1(&pt, &budget, form).unwrap();
            let d = data.gamma1.distance_bound(&v, p);
            assert!(d.cmp(&tol(20)).unwrap() <= 0, "q=2 x={}/{}: {}", xn, xd, decimal_string(&d, 4));
        }
    }
    println!(
        "ACCEPTANCE C2: PASS - gamma1 adjudication: the printed halved log(q-1) coefficient matches the extraction oracle at q in {{3/2, 5}} (>= 20 digits); the un-halved variant does not; both coincide and match at q = 2"
    );
}

/// C3: extracted residue equals (q-1)/log q to >= 30 digits for all grid q.
#[test]
fn c03_residue_extraction() {
    let budget = PrecisionBudget::new(60).unwrap();
    let p = budget.work_bits();
    for q in grid_q() {
        let pt = point(&q, 1, 2);
        let data = extract_laurent(&pt, &budget).unwrap();
        let rho = qzeta::residue_closed_form(pt.q(), &budget).unwrap();
        let d = data.residue.distance_bound(&rho, p);
        assert!(d.cmp(&tol(30)).unwrap() <= 0, "q={}: {}", q, decimal_string(&d, 4));
    }
    println!("ACCEPTANCE C3: PASS - extracted residue equals (q-1)/log q to >= 30 digits for q in {{3/2, 2, 5}}");
}

/// C4 as stated: the printed reflection identity with residual < 1e-40 at
/// a 60-digit budget over b in {3,4,5,7,8,12}, q in {3/2, 2}.
///
/// This fails, and must fail: at q = 3/2 the printed affine coefficient
/// (2q-3) = 0 differs from the true (q-1) = 1/2, leaving residuals of
/// size (2-q)(1/2 - a/b) ~ 1e-2; at q = 2 the two coefficients coincide
/// but the exponentially small theta series (~1e-24) remains. The
/// companion test `c04_reflection_corrected_with_theta` closes the
/// identity to < 1e-40 on the same grid.
#[test]
fn c04_reflection_identity_as_stated() {
    let budget = PrecisionBudget::new(60).unwrap();
    let t = tol(40);
    let mut failures: Vec<String> = Vec::new();
    let mut passes = 0usize;
    for q in [rat(3, 2), rat(2, 1)] {
        let qv = QValue::Rational(q.clone());
        for b in REFLECTION_GRID_B {
            for a in coprime_half(b) {
                let rep = verify_t2(&qv, a, b, &budget, &t, AffineForm::AsPrinted, false).unwrap();
                if rep.verdict == Verdict::Pass {
                    passes += 1;
                } else {
                    failures.push(format!(
                        "q={} a={} b={}: residual {}",
                        q, a, b,
                        decimal_string(rep.residual.value(), 4)
                    ));
                }
            }
        }
    }
    // negative control: a 1e-10 perturbation must fail (it does, along
    // with everything else at q != 2; asserted separately below)
    if failures.is_empty() {
        println!("ACCEPTANCE C4: PASS - printed reflection identity < 1e-40 everywhere");
    } else {
        println!(
            "ACCEPTANCE C4: FAIL (as stated) - printed reflection identity misses 1e-40 at {}/{} grid points. \
             Sample residuals: {}. Diagnosis: the affine coefficient should read (q-1), not (2q-3) \
             (they agree only at q=2), and an exponentially small theta series ~e^(-4pi^2/log q) remains; \
             see c04_reflection_corrected_with_theta, which passes at < 1e-40 on the same grid.",
            failures.len(),
            failures.len() + passes,
            failures[..3.min(failures.len())].join("; ")
        );
        panic!(
            "criterion C4 cannot pass as stated: {} of {} grid points exceed 1e-40 (largest-class residuals ~1e-2 at q=3/2, ~1e-24 at q=2)",
            failures.len(),
            failures.len() + passes
        );
    }
}

/// The perturbation negative control attached to C4: shifting the rhs by
/// 1e-10 must flip the verdict to fail even under the completed identity.
#[test]
fn c04_reflection_negative_control() {
    let budget = PrecisionBudget::new(60).unwrap();
    let p = budget.work_bits();
    let qv = QValue::Rational(rat(2, 1));
    let rep = verify_t2(&qv, 1, 3, &budget, &tol(40), AffineForm::Corrected, true).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass);
    // perturb: residual jumps to ~1e-10, far over the tolerance
    let perturbed = rep.residual.add(&BoundedValue::from_rational(&rat(1, 10_000_000_000), p), p);
    assert!(perturbed.value().abs().cmp(&tol(40)).unwrap() > 0);
    println!("ACCEPTANCE C4 (negative control): PASS - a 1e-10 perturbation of the rhs fails the 1e-40 verdict");
}

/// Companion to C4: corrected affine coefficient (q-1) plus the theta
/// series closes the reflection identity below 1e-40 on the whole grid.
#[test]
fn c04_reflection_corrected_with_theta() {
    let budget = PrecisionBudget::new(60).unwrap();
    let t = tol(40);
    let mut worst = BigFloat::from_i64(0, 64);
    for q in [rat(3, 2), rat(2, 1)] {
        let qv = QValue::Rational(q.clone());
        for b in REFLECTION_GRID_B {
            for a in coprime_half(b) {
                let rep = verify_t2(&qv, a, b, &budget, &t, AffineForm::Corrected, true).unwrap();
                assert_eq!(
                    rep.verdict,
                    Verdict::Pass,
                    "q={} a={} b={}: residual {}",
                    q, a, b,
                    decimal_string(rep.residual.value(), 4)
                );
                let r = rep.residual.value().abs();
                if r.cmp(&worst).unwrap() > 0 {
                    worst = r;
                }
            }
        }
    }
    println!(
        "ACCEPTANCE C4 (corrected): PASS - reflection identity with (q-1) affine term and theta series holds with residual < 1e-40 on the full grid (worst {})",
        decimal_string(&worst, 3)
    );
}

/// C5: the cotangent-Bernoulli sum embeds to cot(pi a/b) within bounds
/// and the exact element equality i cot = (1+zeta^a)/(1-zeta^a) holds in
/// Q(zeta_b), for every coprime pair with b <= 30.
#[test]
fn c05_cotangent_bernoulli_exact_and_numeric() {
    let budget = PrecisionBudget::new(45).unwrap();
    let mut count = 0;
    for b in 3..=30i64 {
        for a in coprime_half(b) {
            let rep = verify_cot_bernoulli(a, b, &budget, &tol(40)).unwrap();
            assert_eq!(rep.verdict, Verdict::Pass, "a={} b={}", a, b);
            assert_eq!(rep.exact, Some(true), "exact equality failed at a={} b={}", a, b);
            count += 1;
        }
        // (1 - zeta^a) * icot == (1 + zeta^a), exactly in Q(zeta_b), for
        // the full coprime system
        for &a in ResidueSystem::new(b as u64).unwrap().full_system() {
            let icot = qzeta::icot_exact(a as i64, b).unwrap();
            let za = CyclotomicElement::root_power(b as u64, a as i64);
            let one = CyclotomicElement::one(b as u64);
            assert_eq!(
                one.sub(&za).unwrap().mul(&icot).unwrap(),
                one.add(&za).unwrap(),
                "icot identity at a={} b={}",
                a, b
            );
        }
    }
    println!(
        "ACCEPTANCE C5: PASS - cotangent-Bernoulli sum exact + numeric for all {} coprime pairs with b <= 30",
        count
    );
}

/// C6: L-value triangle: paired partial sums (10^6 terms) within 1e-6 of
/// the digamma closed form; the digamma form equals (pi/b) cot(pi a/b) to
/// >= 40 digits; the divergence guard rejects an even test function.
#[test]
fn c06_l_value_triangle() {
    let budget = PrecisionBudget::new(60).unwrap();
    let p = budget.work_bits();
    for b in [3i64, 4, 5, 6] {
        for a in coprime_half(b) {
            let partial = l_delta_partial(a, b, 1_000_000).unwrap();
            let closed = l_delta_digamma(a, b, &budget).unwrap();
            let diff = partial.sub(&closed, p);
            assert!(
                diff.value().abs().cmp(&tol(6)).unwrap() <= 0,
                "partial vs digamma at a={} b={}: {}",
                a, b,
                decimal_string(diff.value(), 4)
            );
            // digamma form vs (pi/b) cot(pi a/b)
            let cot = qzeta::cot_value(a, b, &budget).unwrap();
            let rhs = qzeta::bounded::pi(p)
                .scale(&rat(1, b), p)
                .mul(&cot, p);
            let d = closed.distance_bound(&rhs, p);
            assert!(d.cmp(&tol(40)).unwrap() <= 0, "digamma vs cot at a={} b={}", a, b);
        }
    }
    // divergence guard: even function f(a) = f(b-a) = 1 has nonzero period sum
    let even = vec![rat(1, 1), rat(0, 1), rat(1, 1), rat(0, 1)];
    assert!(l_periodic_partial(&even, 1000).is_err());
    println!("ACCEPTANCE C6: PASS - L-value triangle (partial sums, digamma, cotangent) for b in {{3,4,5,6}}; divergence guard triggers");
}

/// C7, exact half: sigma_r(kappa_a) = kappa_{ar mod b} holds exactly
/// (with the fold sign) for q in {2, 3/2}, b in {4,5,7,8,12}.
#[test]
fn c07_kappa_galois_orbits_exact() {
    let mut rows = 0;
    for q in [rat(2, 1), rat(3, 2)] {
        for b in [4i64, 5, 7, 8, 12] {
            let reports = qzeta::galois_orbit_check(&q, b).unwrap();
            assert!(
                reports.iter().all(|r| r.verdict == Verdict::Pass),
                "orbit table failed at q={} b={}",
                q, b
            );
            rows += reports.len();
        }
    }
    println!(
        "ACCEPTANCE C7 (exact orbits): PASS - {} exact Galois-orbit rows verified with the fold sign",
        rows
    );
}

/// C7 as stated, numeric half: kappa_a (printed affine term) must match
/// the exact candidate within bounds. Fails for the same two reasons as
/// C4; the companion below passes with the corrected bracket.
#[test]
fn c07_kappa_numeric_as_stated() {
    let budget = PrecisionBudget::new(50).unwrap();
    let p = budget.work_bits();
    let mut failures = Vec::new();
    let mut total = 0;
    for q in [rat(2, 1), rat(3, 2)] {
        for b in [4i64, 5, 7, 8, 12] {
            for a in coprime_half(b) {
                total += 1;
                let k = kappa(&q, a, b, &budget, AffineForm::AsPrinted, false).unwrap();
                let emb = k.exact_candidate.embed_numeric(&budget).unwrap();
                let d = k.numeric.distance_bound(&emb, p);
                let allowed = k.numeric.im.bound().add(emb.im.bound(), 64, RoundingMode::Up);
                if d.cmp(&allowed).unwrap() > 0 {
                    failures.push(format!("q={} a={} b={}: gap {}", q, a, b, decimal_string(&d, 4)));
                }
            }
        }
    }
    if failures.is_empty() {
        println!("ACCEPTANCE C7 (numeric): PASS");
    } else {
        println!(
            "ACCEPTANCE C7 (numeric): FAIL (as stated) - kappa with the printed (2q-3) bracket misses its exact candidate at {}/{} points (gap ~(log q/pi)(2-q)(1/2-a/b) + theta; e.g. {}). \
             The corrected bracket plus theta matches within bounds: see c07_kappa_numeric_corrected.",
            failures.len(),
            total,
            failures[0]
        );
        panic!(
            "criterion C7 numeric half cannot pass as stated: {} of {} (q,a,b) points differ beyond certified bounds",
            failures.len(),
            total
        );
    }
}

/// Companion to C7: with the corrected affine term and the theta series
/// removed from the bracket, kappa matches its exact candidate within
/// certified bounds everywhere on the grid.
#[test]
fn c07_kappa_numeric_corrected() {
    let budget = PrecisionBudget::new(50).unwrap();
    let p = budget.work_bits();
    for q in [rat(2, 1), rat(3, 2)] {
        for b in [4i64, 5, 7, 8, 12] {
            for a in coprime_half(b) {
                let k = kappa(&q, a, b, &budget, AffineForm::Corrected, true).unwrap();
                let emb = k.exact_candidate.embed_numeric(&budget).unwrap();
                let d = k.numeric.distance_bound(&emb, p);
                assert!(
                    d.cmp(&tol(40)).unwrap() <= 0,
                    "q={} a={} b={}: gap {}",
                    q, a, b,
                    decimal_string(&d, 4)
                );
            }
        }
    }
    println!("ACCEPTANCE C7 (corrected): PASS - kappa (corrected bracket + theta) matches the exact cyclotomic candidate to < 1e-40 on the full grid");
}

fn lcg(state: &mut u64) -> u64 {
    *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    *state >> 11
}

/// C8, completeness half: 100/100 planted relations over 6-element bases
/// of standard constants recovered at 120 digits with bound 10^4.
#[test]
fn c08_planted_relation_recoveries() {
    let digits = 120u32;
    let p = qzeta::precision::bits_for_digits(digits * 2 + 20);
    let budget = PrecisionBudget::new(digits * 2 + 20).unwrap();
    // pool of standard constants, evaluated once at generous precision
    let pool: Vec<(&str, BoundedValue)> = {
        let pi = qzeta::bounded::pi(p);
        let e = BoundedValue::from_i64(1, p).exp(p).unwrap();
        let s2 = BoundedValue::from_i64(2, p).sqrt(p).unwrap();
        let s3 = BoundedValue::from_i64(3, p).sqrt(p).unwrap();
        let s5 = BoundedValue::from_i64(5, p).sqrt(p).unwrap();
        let ln2 = BoundedValue::from_i64(2, p).ln(p).unwrap();
        let ln3 = BoundedValue::from_i64(3, p).ln(p).unwrap();
        let ln5 = BoundedValue::from_i64(5, p).ln(p).unwrap();
        let gamma = qzeta::euler_gamma(&budget).unwrap();
        let pi2 = pi.mul(&pi, p);
        vec![
            ("pi", pi),
            ("e", e),
            ("sqrt2", s2),
            ("sqrt3", s3),
            ("sqrt5", s5),
            ("ln2", ln2),
            ("ln3", ln3),
            ("ln5", ln5),
            ("gamma", gamma),
            ("pi^2", pi2),
        ]
    };
    let mut state = 0x5eed_0001u64;
    let mut recovered = 0;
    for trial in 0..100 {
        // choose 5 distinct pool constants
        let mut idx: Vec<usize> = (0..pool.len()).collect();
        for i in 0..5 {
            let j = i + (lcg(&mut state) as usize) % (idx.len() - i);
            idx.swap(i, j);
        }
        let chosen: Vec<&(&str, BoundedValue)> = idx[..5].iter().map(|&i| &pool[i]).collect();
        // plant coefficients with max |c| <= 10^4, c6 != 0
        let c: Vec<i64> = (0..6)
            .map(|_| {
                let v = (lcg(&mut state) % 20_001) as i64 - 10_000;
                if v == 0 { 7 } else { v }
            })
            .collect();
        // v6 = -(sum_{i<6} c_i v_i)/c6
        let mut acc = BoundedValue::zero();
        for (ci, (_, v)) in c[..5].iter().zip(&chosen) {
            acc = acc.add(&v.scale(&rat(*ci, 1), p), p);
        }
        let v6 = acc.scale(&rat(-1, c[5]), p);
        let values: Vec<BoundedValue> = chosen.iter().map(|(_, v)| (*v).clone()).chain([v6]).collect();
        let labels: Vec<String> = chosen
            .iter()
            .map(|(n, _)| n.to_string())
            .chain(["planted".into()])
            .collect();
        let basis = FnBasis {
            labels,
            f: move |_digits: u32| Ok(values.clone()),
        };
        let cert = find_relation(&basis, 10_000, digits).unwrap();
        assert_eq!(cert.status, RelationStatus::Found, "trial {} found no relation", trial);
        let got = cert.coefficients.unwrap();
        // proportional to the planted vector
        let planted: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        let proportional = (0..6).all(|i| {
            (0..6).all(|j| &got[i] * &planted[j] == &got[j] * &planted[i])
        });
        assert!(proportional, "trial {}: got {:?} planted {:?}", trial, got, planted);
        recovered += 1;
    }
    assert_eq!(recovered, 100);
    println!("ACCEPTANCE C8 (planted): PASS - 100/100 planted relations recovered at 120 digits, bound 10^4");
}

/// C8 as stated, recovery half: `t2-recover` must find the printed
/// relation at 100 digits for (2,1,3) and (2,1,4). The acceptance
/// threshold at 100 digits is 10^-50, but the true residual of the
/// printed combination is the theta series (~1.7e-23 and ~2.5e-23 after
/// clearing denominators), so no such relation exists to be found.
#[test]
fn c08_t2_recovery_as_stated() {
    let mut errors = Vec::new();
    for (a, b, expect) in [(1i64, 3i64, "(6,-6,-1)"), (1, 4, "(4,-4,-1)")] {
        match recover_t2_relation(&rat(2, 1), a, b, 100, AffineForm::AsPrinted) {
            Ok(cert) => println!("unexpectedly recovered {:?}", cert.coefficients),
            Err(e) => errors.push(format!("(2,{},{}) expecting {}: {}", a, b, expect, e)),
        }
    }
    if errors.is_empty() {
        println!("ACCEPTANCE C8 (t2-recover): PASS");
    } else {
        println!(
            "ACCEPTANCE C8 (t2-recover): FAIL (as stated) - the printed reflection combination is not an integer \
             relation at 100 digits: its residual is the theta series, ~2.9e-24, far above the 1e-50 \
             verification threshold. At 40 digits (threshold 1e-20) the same relation IS found - see \
             c08_t2_recovery_at_forty_digits. Engine soundness is attested by the 100/100 planted recoveries."
        );
        panic!("criterion C8 t2-recover half cannot pass as stated: {}", errors.join("; "));
    }
}

/// Companion to C8: the printed relation is recovered at 40 digits
/// (where the threshold 1e-20 sits above theta), with exactly the
/// expected coefficient vectors; and at q=3/2 the corrected-coefficient
/// relation is found while the printed one is correctly rejected.
#[test]
fn c08_t2_recovery_at_forty_digits() {
    let cert = recover_t2_relation(&rat(2, 1), 1, 3, 40, AffineForm::AsPrinted).unwrap();
    let c: Vec<i64> = cert.coefficients.unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect();
    assert!(c == [6, -6, -1] || c == [-6, 6, 1], "got {:?}", c);
    let cert = recover_t2_relation(&rat(2, 1), 1, 4, 40, AffineForm::AsPrinted).unwrap();
    let c: Vec<i64> = cert.coefficients.unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect();
    assert!(c == [4, -4, -1] || c == [-4, 4, 1], "got {:?}", c);
    // corrected-affine recovery at q = 3/2 where the printed form fails
    assert!(recover_t2_relation(&rat(3, 2), 1, 3, 40, AffineForm::AsPrinted).is_err());
    let cert = recover_t2_relation(&rat(3, 2), 1, 3, 40, AffineForm::Corrected).unwrap();
    let c: Vec<i64> = cert.coefficients.unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect();
    assert!(c == [12, -12, -1] || c == [-12, 12, 1], "got {:?}", c);
    println!("ACCEPTANCE C8 (recovery at 40 digits): PASS - (6,-6,-1) and (4,-4,-1) found at q=2; corrected (12,-12,-1) found at q=3/2 where the printed form is rightly rejected");
}

/// C9, search half: conjecture probes at 150 digits, bound 1e8, for
/// (q=2, b in {3,4,5}), each under 10 minutes, all none_below_bound.
#[test]
fn c09_conjecture_probe_runs() {
    for b in [3u64, 4, 5] {
        let started = std::time::Instant::now();
        let out = probe_conjecture_a(&rat(2, 1), b, 150, 100_000_000, None).unwrap();
        assert_eq!(
            out.certificate.status,
            RelationStatus::NoneBelowBound,
            "b={}: unexpected relation {:?}",
            b,
            out.certificate.coefficients
        );
        assert!(started.elapsed().as_secs() < 600, "b={} exceeded 10 minutes", b);
    }
    println!("ACCEPTANCE C9 (searches): PASS - none_below_bound for (q=2, b=3,4,5) at 150 digits, bound 1e8, each < 10 min");
}

/// C9 as stated, positive-control half: appending the printed reflection
/// combination must yield `found`. The appended value is not zero - it
/// is the theta series (~2.9e-24), which at 150 digits (threshold 1e-75)
/// is a nonzero number, so the search correctly reports none.
#[test]
fn c09_positive_control_as_stated() {
    let out = probe_conjecture_a(
        &rat(2, 1),
        3,
        150,
        100_000_000,
        Some(ControlColumn::ReflectionAsPrinted),
    )
    .unwrap();
    if out.certificate.status == RelationStatus::Found {
        println!("ACCEPTANCE C9 (positive control): PASS");
    } else {
        println!(
            "ACCEPTANCE C9 (positive control): FAIL (as stated) - the appended combination gamma0diff - printed rhs \
             equals the theta series ~2.9e-24, a genuinely nonzero value at 150 digits, so no relation exists. \
             Appending the corrected combination (affine (q-1) + theta) yields found: see c09_positive_control_corrected."
        );
        panic!(
            "criterion C9 positive control cannot pass as stated: appended column is nonzero (theta ~ 2.9e-24 > 1e-75 threshold); residual seen {}",
            bound_string(out.certificate.residual.value())
        );
    }
}

/// Companion to C9: the corrected combination is numerically zero to
/// full precision and the planted control is found.
#[test]
fn c09_positive_control_corrected() {
    let out = probe_conjecture_a(
        &rat(2, 1),
        3,
        150,
        100_000_000,
        Some(ControlColumn::ReflectionCorrected),
    )
    .unwrap();
    assert_eq!(out.certificate.status, RelationStatus::Found);
    let c = out.certificate.coefficients.unwrap();
    // the appended column alone carries the relation
    assert!(c[..3].iter().all(|x| x.is_zero()) && !c[3].is_zero(), "got {:?}", c);
    println!("ACCEPTANCE C9 (corrected control): PASS - the corrected reflection combination is found as a relation at 150 digits");
}

/// C10: dimension bounds for b in {3, 5, 12} equal phi/2 + 1 and
/// [2, phi/2 + 2] exactly.
#[test]
fn c10_dimension_reports() {
    for (b, phi) in [(3u64, 2u64), (5, 4), (12, 4)] {
        let r = dimension_report(b, false).unwrap();
        assert_eq!(r.phi, phi);
        assert_eq!(r.disjoint_lower_bound, phi / 2 + 1);
        assert_eq!(r.kappa_bracket, (2, phi / 2 + 2));
    }
    println!("ACCEPTANCE C10: PASS - dimension bounds phi/2+1 and [2, phi/2+2] for b in {{3, 5, 12}}");
}

/// C11: identical configuration produces byte-identical JSON.
#[test]
fn c11_deterministic_reports() {
    let bin = env!("CARGO_BIN_EXE_qzeta");
    let runs: Vec<Vec<&str>> = vec![
        vec!["eval", "gamma0", "--q", "2", "--x", "1/2", "--digits", "40"],
        vec!["eval", "laurent", "--q", "3/2", "--x", "1/3", "--digits", "30"],
        vec!["verify", "t2", "--q", "2", "--b", "5", "--all-a", "--digits", "40",
             "--tolerance", "1e-20", "--affine", "corrected", "--with-theta"],
        vec!["relate", "dimensions", "--b", "12"],
        vec!["relate", "t2-recover", "--q", "2", "--a", "1", "--b", "3", "--digits", "40"],
    ];
    for args in runs {
        let out1 = std::process::Command::new(bin).args(&args).output().unwrap();
        let out2 = std::process::Command::new(bin).args(&args).output().unwrap();
        assert!(out1.status.success(), "command failed: {:?}", args);
        assert_eq!(out1.stdout, out2.stdout, "non-deterministic output for {:?}", args);
    }
    println!("ACCEPTANCE C11: PASS - byte-identical JSON across re-runs for eval/verify/relate commands");
}

/// Fold-consistency invariant attached to the relation engine: the basis
/// {1, gamma0 values} and the equivalent difference/sum spanning set give
/// identical found/none outcomes at equal precision and bound.
#[test]
fn relation_fold_consistency() {
    let q = rat(2, 1);
    let digits = 80u32;
    let bound = 100_000u64;
    let direct = probe_conjecture_a(&q, 3, digits, bound, None).unwrap();
    // spanning set {1, g(1/3)-g(2/3), g(1/3)+g(2/3)}
    let qq = q.clone();
    let basis = FnBasis {
        labels: vec!["1".into(), "diff".into(), "sum".into()],
        f: move |digits: u32| {
            let budget = PrecisionBudget::new(digits)?;
            let p = budget.work_bits();
            let a = gamma0(&point(&qq, 1, 3), &budget)?;
            let b = gamma0(&point(&qq, 2, 3), &budget)?;
            Ok(vec![BoundedValue::from_i64(1, p), a.sub(&b, p), a.add(&b, p)])
        },
    };
    let folded = find_relation(&basis, bound, digits).unwrap();
    assert_eq!(direct.certificate.status, folded.status);
    assert_eq!(direct.certificate.status, RelationStatus::NoneBelowBound);
    println!("fold consistency: both spanning sets report {}", folded.status);
}

/// Residue-system data attached to the acceptance grid: phi counts used
/// by C4/C7 match the half/full systems.
#[test]
fn residue_system_grid_counts() {
    for b in REFLECTION_GRID_B {
        let rs = ResidueSystem::new(b as u64).unwrap();
        assert_eq!(rs.half_system().len(), coprime_half(b).len());
    }
    println!("residue systems consistent on the acceptance grid");
}
