//! `dualsig` command-line front end.
//!
//! Exit codes: 0 success or accept, 1 verification reject, 2 usage error,
//! 3 runtime or file-format error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dualsig::attack::{run_reduction, MAX_BITS};
use dualsig::codec::{
    params_from_text, params_to_text, primes_from_text, primes_to_text, private_from_text, private_to_text,
    public_from_text, public_to_text, signature_from_text, signature_to_text,
};
use dualsig::{gen_params, kat, keygen, seeded_rng, sign, verify, SeededRng};
use rand::SeedableRng;

const REJECT: u8 = 1;
const RUNTIME: u8 = 3;

#[derive(Parser)]
#[command(name = "dualsig", version, about = "Signatures resting on factoring and elliptic-curve discrete logs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate curve parameters; writes <out>.params and <out>.primes
    Params {
        /// Bit length of each prime factor of n
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        bits: u32,
        /// Hex-encoded seed for reproducible output
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a key pair; writes <out>.pub and <out>.priv
    Keygen {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        primes: PathBuf,
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sign a message read from --in or standard input
    Sign {
        #[arg(long = "priv")]
        private: PathBuf,
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify a signature; exits 0 on accept and 1 on reject
    Verify {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        sig: PathBuf,
    },
    /// Recover the factors of n from signatures under chosen (g, a, b)
    Attack {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=MAX_BITS as i64))]
        bits: u32,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        sigs: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        trials: u32,
        #[arg(long)]
        seed: Option<String>,
    },
    /// Run the embedded known-answer vectors
    Selftest,
}

/// A failed command: exit code plus the message for standard error.
struct Failure(u8, String);

impl Failure {
    fn runtime(msg: impl std::fmt::Display) -> Self {
        Failure(RUNTIME, msg.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn rng_from(seed: Option<&str>) -> Result<SeededRng, Failure> {
    match seed {
        Some(s) => {
            let bytes = hex::decode(s).map_err(|e| Failure(2, format!("--seed must be hex: {e}")))?;
            Ok(seeded_rng(&bytes))
        }
        None => Ok(SeededRng::from_entropy()),
    }
}

fn with_suffix(out: &Path, ext: &str) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::runtime(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::runtime(format!("{}: {e}", path.display())))
}

fn read_message(input: Option<&Path>) -> Result<Vec<u8>, Failure> {
    match input {
        Some(p) if p != Path::new("-") => fs::read(p).map_err(|e| Failure::runtime(format!("{}: {e}", p.display()))),
        _ => {
            let mut buf = Vec::new();
            io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| Failure::runtime(format!("stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> dualsig::Result<T>) -> Result<T, Failure> {
    parse(&read_text(path)?).map_err(|e| Failure::runtime(format!("{}: {e}", path.display())))
}

fn cmd_params(bits: u32, seed: Option<&str>, out: &Path) -> CmdResult {
    let mut rng = rng_from(seed)?;
    let generated = gen_params(bits, &mut rng).map_err(Failure::runtime)?;
    write_text(&with_suffix(out, "params"), &params_to_text(&generated.params))?;
    write_text(&with_suffix(out, "primes"), &primes_to_text(&generated.p1, &generated.p2))
}

fn cmd_keygen(params: &Path, primes: &Path, seed: Option<&str>, out: &Path) -> CmdResult {
    let params = load(params, params_from_text)?;
    let (p1, p2) = load(primes, primes_from_text)?;
    let mut rng = rng_from(seed)?;
    let (public, private) = keygen(params, p1, p2, &mut rng).map_err(Failure::runtime)?;
    write_text(&with_suffix(out, "pub"), &public_to_text(&public))?;
    write_text(&with_suffix(out, "priv"), &private_to_text(&private))
}

fn cmd_sign(private: &Path, public: &Path, input: Option<&Path>, out: &Path) -> CmdResult {
    let private = load(private, private_from_text)?;
    let public = load(public, public_from_text)?;
    let message = read_message(input)?;
    let sig = sign(&private, &public, &message).map_err(Failure::runtime)?;
    write_text(out, &signature_to_text(&sig))
}

fn cmd_verify(public: &Path, input: Option<&Path>, sig: &Path) -> CmdResult {
    let public = load(public, public_from_text)?;
    let sig = load(sig, signature_from_text)?;
    let message = read_message(input)?;
    verify(&public, &message, &sig).map_err(|r| Failure(REJECT, format!("rejected: {r}")))
}

fn cmd_attack(bits: u32, sigs: u32, trials: u32, seed: Option<&str>) -> CmdResult {
    let mut rng = rng_from(seed)?;
    let mut stdout = io::stdout().lock();
    let mut wins = 0;
    for trial in 1..=trials {
        let report = run_reduction(bits, sigs as usize, &mut rng).map_err(Failure::runtime)?;
        if report.success {
            wins += 1;
        }
        let _ = writeln!(stdout, "trial = {trial}\n{}", report.to_lines());
    }
    let _ = writeln!(stdout, "tally = {wins}/{trials}");
    let required = (9 * trials).div_ceil(10);
    if sigs >= 4 && bits <= 24 && wins < required {
        return Err(Failure::runtime(format!("only {wins} of {trials} trials succeeded, expected at least {required}")));
    }
    Ok(())
}

fn cmd_selftest() -> CmdResult {
    let checks = kat::selftest();
    let mut stdout = io::stdout().lock();
    for c in &checks {
        let _ = writeln!(stdout, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::runtime(format!("self-test failed: {}", failed.join("; "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Params { bits, seed, out } => cmd_params(*bits, seed.as_deref(), out),
        Command::Keygen { params, primes, seed, out } => cmd_keygen(params, primes, seed.as_deref(), out),
        Command::Sign { private, public, input, out } => cmd_sign(private, public, input.as_deref(), out),
        Command::Verify { public, input, sig } => cmd_verify(public, input.as_deref(), sig),
        Command::Attack { bits, sigs, trials, seed } => cmd_attack(*bits, *sigs, *trials, seed.as_deref()),
        Command::Selftest => cmd_selftest(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("dualsig: {msg}");
            ExitCode::from(code)
        }
    }
}
