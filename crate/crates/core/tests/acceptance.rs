//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dualsig::attack::run_reduction;
use dualsig::hashing::map_to_point_draw;
use dualsig::instrument::measure;
use dualsig::kat;
use dualsig::numeric::{from_dec, is_prime, mod_pow, MR_ROUNDS};
use dualsig::scheme::is_valid;
use dualsig::{gen_params, keygen, seeded_rng, sign, verify, Nat, Point, SchemeParams, Signature};
use num_traits::One;
use rand::Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

/// Published example: every derived quantity, digit for digit.
fn large_example() -> Outcome {
    let (p1, p2) = (kat::p1(), kat::p2());
    let n = &p1 * &p2;
    let phi = (&p1 - 1u32) * (&p2 - 1u32);
    let q = (&n << 2usize) - 1u32;
    let (a, b, g) = (kat::a(), kat::b(), kat::g());

    let mut mismatches = Vec::new();
    let mut expect = |name: &'static str, ok: bool| {
        if !ok {
            mismatches.push(name);
        }
    };
    expect("n", n == from_dec(kat::N));
    expect("q", q == from_dec(kat::Q_PRIME));
    expect("q prime", is_prime(&q, MR_ROUNDS));

    let (public, _) = match kat::keys() {
        Ok(k) => k,
        Err(e) => return outcome(false, format!("key setup failed: {e}")),
    };
    let curve = public.params().curve();
    let base = kat::base_point();
    expect("P on curve", curve.is_on_curve(&base));
    expect(
        "ord(P) = n",
        curve.scalar_mul(&n, &base).is_infinity()
            && !curve.scalar_mul(&p1, &base).is_infinity()
            && !curve.scalar_mul(&p2, &base).is_infinity(),
    );
    expect("r", public.r() == &from_dec(kat::R_SCALAR));
    expect("2^a mod n", mod_pow(&g, &a, &n).ok() == Some(from_dec(kat::G_POW_A)));
    let a_minus_ab = (&a + &phi - (&a * &b) % &phi) % &phi;
    expect(
        "2^(a(1-b)) mod n",
        mod_pow(&g, &a_minus_ab, &n).ok() == Some(from_dec(kat::G_POW_A_MINUS_AB_PUBLISHED)),
    );
    expect("Q", public.q() == &Point::affine(from_dec(kat::QX), from_dec(kat::QY)));
    expect(
        "R",
        public.big_r() == &Point::affine(from_dec(kat::RX_PUBLISHED), from_dec(kat::RY_PUBLISHED)),
    );

    if mismatches.is_empty() {
        outcome(true, "all 11 values reproduced")
    } else {
        outcome(false, format!("{}/11 reproduced; mismatched: {}", 11 - mismatches.len(), mismatches.join(", ")))
    }
}

/// e(uP, vP) = e(P, P)^(uv mod 35) for all 35² pairs on E(F_139).
fn toy_bilinearity() -> Outcome {
    let params = kat::toy_params();
    let ctx = params.pairing();
    let p = ctx.curve().p().clone();
    let z = match params.self_pairing() {
        Ok(z) => z,
        Err(e) => return outcome(false, e.to_string()),
    };
    let pts: Vec<_> = (0u32..35).map(|u| ctx.curve().scalar_mul(&Nat::from(u), params.base())).collect();
    let mut bad = 0;
    for (u, up) in pts.iter().enumerate() {
        for (v, vp) in pts.iter().enumerate() {
            let expected = z.pow(&Nat::from((u * v % 35) as u32), &p);
            if ctx.e_n(up, vp).ok() != Some(expected) {
                bad += 1;
            }
        }
    }
    outcome(bad == 0, format!("{} of 1225 pairs agree", 1225 - bad))
}

/// e(P,P) is a primitive n-th root of unity for every generated set.
fn primitivity() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for bits in [3u32, 8, 16] {
        let mut rng = seeded_rng(format!("primitivity-{bits}").as_bytes());
        for _ in 0..20 {
            let g = match gen_params(bits, &mut rng) {
                Ok(g) => g,
                Err(e) => return outcome(false, format!("generation at l = {bits} failed: {e}")),
            };
            let ok = (|| {
                let params: &SchemeParams = &g.params;
                let ctx = params.pairing();
                let z = params.self_pairing().ok()?;
                let n = params.n();
                Some(
                    ctx.order_divides(&z, n)
                        && !ctx.order_divides(&z, &(n / &g.p1))
                        && !ctx.order_divides(&z, &(n / &g.p2)),
                )
            })()
            .unwrap_or(false);
            checked += 1;
            if !ok {
                failures.push(format!("l={bits} n={}", g.params.n()));
            }
        }
    }
    outcome(failures.is_empty(), format!("{}/{checked} sets primitive{}", checked - failures.len(), failures.iter().map(|f| format!("; not primitive: {f}")).collect::<String>()))
}

fn flip_bit(x: &Nat, bit: u64) -> Nat {
    x ^ (Nat::one() << bit)
}

/// 100 round trips and 1000 single-bit mutations at l = 32.
fn round_trip_and_tamper() -> Outcome {
    let mut rng = seeded_rng(b"acceptance-l32");
    let g = match gen_params(32, &mut rng) {
        Ok(g) => g,
        Err(e) => return outcome(false, e.to_string()),
    };
    let (public, private) = match keygen(g.params, g.p1, g.p2, &mut rng) {
        Ok(k) => k,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut corpus = Vec::with_capacity(100);
    let mut accepted = 0;
    for _ in 0..100 {
        let len = rng.gen_range(0..64);
        let mut m = vec![0u8; len];
        rng.fill(&mut m[..]);
        let Ok(sig) = sign(&private, &public, &m) else { continue };
        if verify(&public, &m, &sig).is_ok() {
            accepted += 1;
        }
        corpus.push((m, sig));
    }
    let mut rejected = 0;
    for _ in 0..1000 {
        let (m, sig) = &corpus[rng.gen_range(0..corpus.len())];
        let (m2, sig2) = match rng.gen_range(0..3) {
            0 => {
                let bit = rng.gen_range(0..sig.sx.bits().max(1));
                (m.clone(), Signature { sx: flip_bit(&sig.sx, bit), s: sig.s.clone() })
            }
            1 => {
                let bit = rng.gen_range(0..sig.s.bits().max(1));
                (m.clone(), Signature { sx: sig.sx.clone(), s: flip_bit(&sig.s, bit) })
            }
            _ => {
                let mut m2 = if m.is_empty() { vec![0u8] } else { m.clone() };
                let bit = rng.gen_range(0..m2.len() * 8);
                m2[bit / 8] ^= 1 << (bit % 8);
                (m2, sig.clone())
            }
        };
        if !is_valid(&public, &m2, &sig2) {
            rejected += 1;
        }
    }
    outcome(
        accepted == 100 && rejected == 1000,
        format!("{accepted}/100 accepted, {rejected}/1000 mutations rejected"),
    )
}

/// On the (5, 7, 139) set the verifier should accept exactly
/// Σ = ±g^(ab)·H(m) with s equal to the canonical exponent.
fn acceptance_characterization() -> Outcome {
    let generated = common::toy_generated();
    let mut rng = seeded_rng(b"acceptance-toy-keys");
    let (public, private) = match keygen(generated.params, generated.p1, generated.p2, &mut rng) {
        Ok(k) => k,
        Err(e) => return outcome(false, e.to_string()),
    };
    let params = public.params();
    let curve = params.curve();
    let (mut extra, mut missing, mut total) = (0, 0, 0);
    for m in [&b"abc"[..], b"", b"message"] {
        let Ok(sig) = sign(&private, &public, m) else {
            return outcome(false, "signing failed");
        };
        for u in 1u32..35 {
            let sigma = curve.scalar_mul(&Nat::from(u), params.base());
            let sx = sigma.x().expect("affine").clone();
            for s in 0u32..24 {
                let cand = Signature { sx: sx.clone(), s: Nat::from(s) };
                let expected = cand == sig;
                let got = is_valid(&public, m, &cand);
                total += 1;
                match (expected, got) {
                    (false, true) => extra += 1,
                    (true, false) => missing += 1,
                    _ => {}
                }
            }
        }
    }
    outcome(
        extra == 0 && missing == 0,
        format!("{total} candidates: {extra} accepted outside the closed form, {missing} valid rejected"),
    )
}

/// attack --bits 24 --sigs 4 --trials 20 succeeds at least 18 times.
fn reduction() -> Outcome {
    let mut rng = seeded_rng(b"acceptance-attack");
    let mut wins = 0;
    for _ in 0..20 {
        match run_reduction(24, 4, &mut rng) {
            Ok(r) if r.success => wins += 1,
            Ok(_) => {}
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    outcome(wins >= 18, format!("{wins}/20 trials factored n"))
}

/// Instrumented operation counts for sign and verify.
fn operation_counts() -> Outcome {
    let (public, private) = common::keys(32, b"acceptance-counts");
    let (sig, s) = measure(|| sign(&private, &public, b"counted"));
    let Ok(sig) = sig else {
        return outcome(false, "signing failed");
    };
    let (res, v) = measure(|| verify(&public, b"counted", &sig));
    let sign_muls = s.scalar_muls + s.hash_to_point;
    let ok = res.is_ok() && s.pairings == 0 && sign_muls <= 2 && v.pairings == 2 && v.scalar_muls == 4;
    outcome(
        ok,
        format!(
            "sign: {} pairings, {} point mults ({} in hashing); verify: {} pairings, {} point mults",
            s.pairings, sign_muls, s.hash_to_point, v.pairings, v.scalar_muls
        ),
    )
}

fn mean_iterations(n: &Nat) -> Option<f64> {
    let mut total = 0;
    for i in 0u32..1000 {
        total += map_to_point_draw(format!("iteration-{i}").as_bytes(), n).ok()?.iterations;
    }
    Some(total as f64 / 1000.0)
}

/// Mean rejection-loop iterations of map-to-point.
fn iteration_bound() -> Outcome {
    let small = mean_iterations(&Nat::from(35u32));
    let n64 = (0u32..)
        .map(|i| gen_params(32, &mut seeded_rng(format!("acceptance-n64-{i}").as_bytes())))
        .filter_map(Result::ok)
        .map(|g| g.params.n().clone())
        .find(|n| n.bits() == 64)
        .expect("a 64-bit modulus");
    let large = mean_iterations(&n64);
    match (small, large) {
        (Some(a), Some(b)) => outcome(a <= 2.5 && b <= 2.05, format!("n = 35: {a:.3} (<= 2.5), 64-bit n: {b:.3} (<= 2.05)")),
        _ => outcome(false, "hashing hit the iteration cap"),
    }
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("large known-answer example", large_example, Some(Duration::from_secs(10))),
        ("exhaustive bilinearity on E(F_139)", toy_bilinearity, Some(Duration::from_secs(60))),
        ("primitive self-pairing of generated sets", primitivity, None),
        ("round trip and tamper rejection at l = 32", round_trip_and_tamper, Some(Duration::from_secs(300))),
        ("exact acceptance set on (5, 7, 139)", acceptance_characterization, None),
        ("factoring reduction at 24 bits", reduction, Some(Duration::from_secs(120))),
        ("sign/verify operation counts", operation_counts, None),
        ("map-to-point iteration bound", iteration_bound, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > *limit {
                result.passed = false;
                result.detail.push_str(&format!("; over the {}s budget", limit.as_secs()));
            }
        }
        if !result.passed {
            failed += 1;
        }
        println!(
            "{} [{}] {name}: {} ({:.2}s)",
            if result.passed { "PASS" } else { "FAIL" },
            i + 1,
            result.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
