//! Known-answer vectors and the self-test.
//!
//! The 256-bit parameter set below (p₁, p₂, P, g = 2, a = 2²⁵⁶ + 2⁹ + 1,
//! b = 2¹²⁸ + 2¹⁰⁰ + 1) comes with published values for n, q = 4n − 1, r,
//! 2^a mod n, Q, and a published 2^(a(1−b)) mod n with its R. The published
//! 2^(a(1−b)) mod n is not 2^((a − ab) mod φ(n)) mod n: the two agree modulo
//! p₁ only. The published R is consistent with the published multiplier
//! (R = m·P), so both are kept, and the self-test checks the
//! recomputed values alongside that consistency relation.

use num_traits::One;

use crate::curve::{CurveParams, Point, PointFp};
use crate::error::Result;
use crate::numeric::{from_dec, is_prime, mod_pow, Nat, MR_ROUNDS};
use crate::scheme::{keygen_with, PrivateKey, PublicKey, SchemeParams};

pub const P1: &str = "66481015416109013092212902294376702835774195899207559806860541669578637494231";
pub const P2: &str = "115738576089152909314582339834842248600964273864643984203082855344579907038313";
pub const N: &str = "7694418061221480574591795362863949897453901238591237288218960734891120311917717394926788820171226366199123245777785821902447854995757079440397354833472303";
pub const Q_PRIME: &str = "30777672244885922298367181451455799589815604954364949152875842939564481247670869579707155280684905464796492983111143287609791419983028317761589419333889211";
pub const PX: &str = "24923438302879103041550933768873817553815859007663697223031249195408950893859429310143108613613599511882670676138255514518447219689120752272772341649471097";
pub const PY: &str = "7379969973486764966658607017040721934904356153827922108275176005385397553581164222633150260686943423362473477977913210910621732098503146107614456038383100";
pub const R_SCALAR: &str = "6060473831180419028002527544274466669204983610931948163044337248603633561584218746945244152671122846476465903001270205739179947005024449868606694311195640";
pub const G_POW_A: &str = "3017032781059846123319599093846455792598383300588875602809811232191097667270756706255964182155241639553199078545733822454265640948748520452895571215190867";
pub const QX: &str = "7260248943743510410597070580439186623312590993698497282989406963716051852174477547835747074046966659229829111355206667689244366615968601129874346167442208";
pub const QY: &str = "18047895238161753485877117311740831532811194992411388021793352694090506314136751081697338862268315480477288944577615443538174923719718185915981630635761798";

/// Published 2^(a(1−b)) mod n and the R built from it.
pub const G_POW_A_MINUS_AB_PUBLISHED: &str = "6901235301332732306263093894248462771489182738937811099893935523975261846628680897065414699668317030484535099301214764389216498622653557732787251147641864";
pub const RX_PUBLISHED: &str = "10151186689439654567058518823964915155717966972738632185569449759143395815855509840876862062561458081975328415803918866764912971271957844142196652521538840";
pub const RY_PUBLISHED: &str = "11830609568816187455064602957532997672345403803742470622163211050426407526147503476874128489377669604873066020056701553914845581133039809142240526482663137";

/// 2^((a − ab) mod φ(n)) mod n and R = that·P, computed independently of
/// this crate.
pub const G_POW_A_MINUS_AB: &str = "3857587773717648331848455032166239256994191485267123001803014197710646114876269309738868078584455009928317179624056665048012774957556761717131706965836593";
pub const RX: &str = "3808113094778207791976092099179226667122451539557163308798002839424051561484982365283482310837719611204421766606632256015828697744704581444104860789825123";
pub const RY: &str = "3308072955314964657139991889210217320162564738151265462522823142128993588372701093177340361015603152144380567547180385801756926227540059629184521133257172";

pub fn a() -> Nat {
    (Nat::one() << 256usize) + (Nat::one() << 9usize) + 1u32
}

pub fn b() -> Nat {
    (Nat::one() << 128usize) + (Nat::one() << 100usize) + 1u32
}

pub fn g() -> Nat {
    Nat::from(2u8)
}

pub fn p1() -> Nat {
    from_dec(P1)
}

pub fn p2() -> Nat {
    from_dec(P2)
}

pub fn base_point() -> PointFp {
    Point::affine(from_dec(PX), from_dec(PY))
}

/// Curve y² = x³ + x over F_q, q = 4p₁p₂ − 1, with the published P.
pub fn params() -> Result<SchemeParams> {
    let n = p1() * p2();
    let q = (&n << 2usize) - 1u32;
    let curve = CurveParams::new(q, Nat::one())?;
    SchemeParams::new(curve, n, base_point())
}

pub fn keys() -> Result<(PublicKey, PrivateKey)> {
    keygen_with(params()?, p1(), p2(), g(), a(), b())
}

/// y² = x³ + x over F_139 with n = 35 = 5·7 and the first base point 4·T
/// (T scanned by increasing x) whose order is exactly 35.
pub fn toy_params() -> SchemeParams {
    let curve = CurveParams::new(Nat::from(139u32), Nat::one()).expect("valid toy curve");
    let n = Nat::from(35u32);
    let base = (0u32..139)
        .filter_map(|x| curve.decompress(&Nat::from(x)).ok())
        .map(|t| curve.scalar_mul_uncounted(&Nat::from(4u32), &t))
        .find(|pt| {
            !curve.scalar_mul_uncounted(&Nat::from(5u32), pt).is_infinity()
                && !curve.scalar_mul_uncounted(&Nat::from(7u32), pt).is_infinity()
        })
        .expect("E(F_139) has points of order 35");
    SchemeParams::new(curve, n, base).expect("valid toy parameters")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

/// Runs every embedded vector plus the exhaustive toy bilinearity table.
pub fn selftest() -> Vec<Check> {
    run_checks(&base_point(), &toy_params())
}

fn run_checks(base: &PointFp, toy: &SchemeParams) -> Vec<Check> {
    let mut out = Vec::new();
    let mut check = |name: &'static str, passed: bool| out.push(Check { name, passed });

    let (p1, p2) = (p1(), p2());
    let n = &p1 * &p2;
    check("n = p1·p2", n == from_dec(N));
    let q = (&n << 2usize) - 1u32;
    check("q = 4n − 1", q == from_dec(Q_PRIME));
    check("q is prime", is_prime(&q, MR_ROUNDS));

    let curve = match CurveParams::new(q, Nat::one()) {
        Ok(c) => c,
        Err(_) => {
            check("curve y² = x³ + x", false);
            return out;
        }
    };
    let on_curve = curve.is_on_curve(base);
    check("P on curve", on_curve);
    let ord_n = on_curve
        && curve.scalar_mul_uncounted(&n, base).is_infinity()
        && !curve.scalar_mul_uncounted(&p1, base).is_infinity()
        && !curve.scalar_mul_uncounted(&p2, base).is_infinity();
    check("ord(P) = n", ord_n);

    let phi = (&p1 - 1u32) * (&p2 - 1u32);
    let (a, b, g) = (a(), b(), g());
    let r = mod_pow(&g, &b, &n).ok();
    check("r = 2^b mod n", r == Some(from_dec(R_SCALAR)));
    let ga = mod_pow(&g, &a, &n).unwrap_or_default();
    check("2^a mod n", ga == from_dec(G_POW_A));
    let a_minus_ab = (&a + &phi - (&a * &b) % &phi) % &phi;
    let ga_ab = mod_pow(&g, &a_minus_ab, &n).unwrap_or_default();
    check("2^(a−ab) mod n", ga_ab == from_dec(G_POW_A_MINUS_AB));

    let times_base = |k: &Nat| on_curve.then(|| curve.scalar_mul_uncounted(k, base));
    let qpt = times_base(&ga);
    check("Q = 2^a·P", qpt == Some(Point::affine(from_dec(QX), from_dec(QY))));
    let rpt = times_base(&ga_ab);
    check("R = 2^(a−ab)·P", rpt == Some(Point::affine(from_dec(RX), from_dec(RY))));
    let published = times_base(&from_dec(G_POW_A_MINUS_AB_PUBLISHED));
    check(
        "published R = published multiplier·P",
        published == Some(Point::affine(from_dec(RX_PUBLISHED), from_dec(RY_PUBLISHED))),
    );

    let (pairing, tc) = (toy.pairing(), toy.curve());
    let tp = tc.p().clone();
    match toy.self_pairing() {
        Ok(z) => {
            let n35 = toy.n();
            check(
                "toy pairing: e(P,P) has order 35",
                pairing.order_divides(&z, n35)
                    && !pairing.order_divides(&z, &Nat::from(5u32))
                    && !pairing.order_divides(&z, &Nat::from(7u32)),
            );
            let mut table_ok = true;
            let multiples: Vec<PointFp> = (0u32..35)
                .map(|u| tc.scalar_mul_uncounted(&Nat::from(u), toy.base()))
                .collect();
            'outer: for (u, up) in multiples.iter().enumerate() {
                for (v, vp) in multiples.iter().enumerate() {
                    let expected = z.pow(&Nat::from((u * v % 35) as u32), &tp);
                    if pairing.e_n(up, vp).ok() != Some(expected) {
                        table_ok = false;
                        break 'outer;
                    }
                }
            }
            check("toy pairing: bilinearity table", table_ok);
        }
        Err(_) => check("toy pairing: e(P,P) has order 35", false),
    }
    out
}
