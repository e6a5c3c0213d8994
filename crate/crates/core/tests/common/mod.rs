#![allow(dead_code)]

use dualsig::{gen_params, keygen, seeded_rng, GeneratedParams, Nat, PrivateKey, PublicKey};

/// Seed for which `gen_params(3, ..)` lands on p₁ = 5, p₂ = 7, p = 139.
pub const TOY_SEED: &[u8] = b"toy-0";

pub fn toy_generated() -> GeneratedParams {
    let g = gen_params(3, &mut seeded_rng(TOY_SEED)).expect("toy parameters");
    assert_eq!((g.p1.clone(), g.p2.clone()), (Nat::from(5u8), Nat::from(7u8)));
    g
}

pub fn toy_keys(seed: &[u8]) -> (PublicKey, PrivateKey) {
    let g = toy_generated();
    keygen(g.params, g.p1, g.p2, &mut seeded_rng(seed)).expect("toy keys")
}

pub fn keys(bits: u32, seed: &[u8]) -> (PublicKey, PrivateKey) {
    let mut rng = seeded_rng(seed);
    let g = gen_params(bits, &mut rng).expect("parameters");
    keygen(g.params, g.p1, g.p2, &mut rng).expect("keys")
}

pub fn n(x: u64) -> Nat {
    Nat::from(x)
}
