//! Shared fixtures for the benchmarks.

use dualsig::{gen_params, keygen, seeded_rng, PrivateKey, PublicKey};

/// Key pair with `bits`-bit primes from a fixed seed.
pub fn fixture_keys(bits: u32) -> (PublicKey, PrivateKey) {
    let mut rng = seeded_rng(format!("bench-{bits}").as_bytes());
    let generated = gen_params(bits, &mut rng).expect("parameter generation");
    keygen(generated.params, generated.p1, generated.p2, &mut rng).expect("key generation")
}
