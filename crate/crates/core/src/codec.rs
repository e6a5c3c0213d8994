//! Line-oriented `name = hexvalue` files for parameters, keys and
//! signatures. Every file starts with `ver = 1`; field sets are exact, and
//! loading re-runs the same validation as the in-memory constructors.

use std::collections::HashMap;

use crate::curve::{CurveParams, Point, PointFp};
use crate::error::{Error, Result};
use crate::numeric::{from_hex, to_hex, Nat};
use crate::scheme::{PrivateKey, PublicKey, SchemeParams, Signature};

pub const VERSION: &str = "1";

pub const PARAMS_FIELDS: &[&str] = &["ver", "p", "A", "n", "Px", "Py"];
pub const PUBLIC_FIELDS: &[&str] = &["ver", "p", "A", "n", "g", "Px", "Py", "Qx", "Qy", "Rx", "Ry", "r"];
pub const PRIVATE_FIELDS: &[&str] = &["ver", "p1", "p2", "a", "b"];
pub const PRIMES_FIELDS: &[&str] = &["ver", "p1", "p2"];
pub const SIGNATURE_FIELDS: &[&str] = &["ver", "Sx", "s"];

/// Renders `name = value` lines in the given order.
pub fn render(fields: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (name, value) in fields {
        out.push_str(name);
        out.push_str(" = ");
        out.push_str(value);
        out.push('\n');
    }
    out
}

/// Parses a record whose field set must equal `expected` exactly.
pub fn parse_record(text: &str, expected: &[&str]) -> Result<HashMap<String, String>> {
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (name, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected `name = value`", lineno + 1)))?;
        let (name, value) = (name.trim(), value.trim());
        if !expected.contains(&name) {
            return Err(Error::Parse(format!("unknown field `{name}`")));
        }
        if map.insert(name.to_string(), value.to_string()).is_some() {
            return Err(Error::Parse(format!("duplicate field `{name}`")));
        }
    }
    for name in expected {
        if !map.contains_key(*name) {
            return Err(Error::Parse(format!("missing field `{name}`")));
        }
    }
    if map["ver"] != VERSION {
        return Err(Error::Parse(format!("unsupported version `{}`", map["ver"])));
    }
    Ok(map)
}

fn nat(map: &HashMap<String, String>, name: &str) -> Result<Nat> {
    from_hex(&map[name]).map_err(|_| Error::Parse(format!("field `{name}` is not hex")))
}

fn point(map: &HashMap<String, String>, xname: &str, yname: &str) -> Result<PointFp> {
    if map[xname] == "inf" && map[yname] == "inf" {
        return Ok(Point::Infinity);
    }
    Ok(Point::affine(nat(map, xname)?, nat(map, yname)?))
}

fn point_fields(pt: &PointFp) -> (String, String) {
    match pt {
        Point::Infinity => ("inf".into(), "inf".into()),
        Point::Affine { x, y } => (to_hex(x), to_hex(y)),
    }
}

fn params_from(map: &HashMap<String, String>) -> Result<SchemeParams> {
    let curve = CurveParams::new(nat(map, "p")?, nat(map, "A")?)?;
    let base = point(map, "Px", "Py")?;
    SchemeParams::new(curve, nat(map, "n")?, base)
}

pub fn params_to_text(params: &SchemeParams) -> String {
    let (px, py) = point_fields(params.base());
    render(&[
        ("ver", VERSION.into()),
        ("p", to_hex(params.curve().p())),
        ("A", to_hex(params.curve().a())),
        ("n", to_hex(params.n())),
        ("Px", px),
        ("Py", py),
    ])
}

pub fn params_from_text(text: &str) -> Result<SchemeParams> {
    params_from(&parse_record(text, PARAMS_FIELDS)?)
}

pub fn public_to_text(public: &PublicKey) -> String {
    let params = public.params();
    let (px, py) = point_fields(params.base());
    let (qx, qy) = point_fields(public.q());
    let (rx, ry) = point_fields(public.big_r());
    render(&[
        ("ver", VERSION.into()),
        ("p", to_hex(params.curve().p())),
        ("A", to_hex(params.curve().a())),
        ("n", to_hex(params.n())),
        ("g", to_hex(public.g())),
        ("Px", px),
        ("Py", py),
        ("Qx", qx),
        ("Qy", qy),
        ("Rx", rx),
        ("Ry", ry),
        ("r", to_hex(public.r())),
    ])
}

pub fn public_from_text(text: &str) -> Result<PublicKey> {
    let map = parse_record(text, PUBLIC_FIELDS)?;
    let params = params_from(&map)?;
    PublicKey::new(
        params,
        nat(&map, "g")?,
        point(&map, "Qx", "Qy")?,
        point(&map, "Rx", "Ry")?,
        nat(&map, "r")?,
    )
}

pub fn private_to_text(private: &PrivateKey) -> String {
    render(&[
        ("ver", VERSION.into()),
        ("p1", to_hex(private.p1())),
        ("p2", to_hex(private.p2())),
        ("a", to_hex(private.a())),
        ("b", to_hex(private.b())),
    ])
}

pub fn private_from_text(text: &str) -> Result<PrivateKey> {
    let map = parse_record(text, PRIVATE_FIELDS)?;
    PrivateKey::new(nat(&map, "p1")?, nat(&map, "p2")?, nat(&map, "a")?, nat(&map, "b")?)
}

pub fn primes_to_text(p1: &Nat, p2: &Nat) -> String {
    render(&[("ver", VERSION.into()), ("p1", to_hex(p1)), ("p2", to_hex(p2))])
}

pub fn primes_from_text(text: &str) -> Result<(Nat, Nat)> {
    let map = parse_record(text, PRIMES_FIELDS)?;
    Ok((nat(&map, "p1")?, nat(&map, "p2")?))
}

pub fn signature_to_text(sig: &Signature) -> String {
    render(&[("ver", VERSION.into()), ("Sx", to_hex(&sig.sx)), ("s", to_hex(&sig.s))])
}

pub fn signature_from_text(text: &str) -> Result<Signature> {
    let map = parse_record(text, SIGNATURE_FIELDS)?;
    Ok(Signature {
        sx: nat(&map, "Sx")?,
        s: nat(&map, "s")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_text_format() {
        let sig = Signature {
            sx: Nat::from(0x8au32),
            s: Nat::from(0u32),
        };
        let text = signature_to_text(&sig);
        assert_eq!(text, "ver = 1\nSx = 8a\ns = 0\n");
        assert_eq!(signature_from_text(&text).unwrap(), sig);
    }

    #[test]
    fn record_errors() {
        assert!(matches!(signature_from_text("ver = 1\ns = 3\n"), Err(Error::Parse(_))));
        assert!(matches!(signature_from_text("ver = 1\nSx = 1\ns = 3\nt = 4\n"), Err(Error::Parse(_))));
        assert!(matches!(signature_from_text("ver = 1\nSx = 1\nSx = 2\ns = 3\n"), Err(Error::Parse(_))));
        assert!(matches!(signature_from_text("ver = 2\nSx = 1\ns = 3\n"), Err(Error::Parse(_))));
        assert!(matches!(signature_from_text("ver = 1\nSx = zz\ns = 3\n"), Err(Error::Parse(_))));
        assert!(matches!(signature_from_text("ver = 1\nSx 1\ns = 3\n"), Err(Error::Parse(_))));
    }
}
