//! Command-line surface for convertible erasure codes.
//!
//! Exit codes: 0 success, 1 a requested verification check failed, 2 usage or
//! precondition errors, 3 I/O or format corruption.

use clap::{Args, Parser, Subcommand};
use convcode::constructions::{
    auto_construction, general_construction, hankel1, hankel2, hankel_family,
    required_field_order, smallest_field_of_order_at_least, trivial_construction,
};
use convcode::conversion::{
    convert, decode, encode_initial, reencode_baseline, MessageBuffer,
};
use convcode::verify::{
    check_plan_soundness, check_stability, is_block_constructible, is_mds_by_erasure,
    min_read_set_search,
};
use convcode::{
    access_lower_bound, manifest, max_unchanged, read_lower_bound_per_stripe, store,
    ConvertibleCode, Error, Field, MergeParams, Result, Scheme, Stripe,
};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "convcode",
    version,
    about = "Convertible erasure codes for stripe merges"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code pair and write its manifest
    Construct(ConstructArgs),
    /// Encode a message into the lambda initial stripes
    Encode(EncodeArgs),
    /// Merge the initial stripes into the final stripe via the conversion plan
    Convert(ConvertArgs),
    /// Merge by reading all data blocks and re-encoding (baseline)
    Reencode(ConvertArgs),
    /// Recover a stripe's data rows and write them as raw bytes
    Decode(DecodeArgs),
    /// Run verification oracles against a code
    Verify(VerifyArgs),
    /// Print the closed-form access bounds for merge parameters
    Bounds(BoundsArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// Number of initial stripes merged into one final stripe
    #[arg(long)]
    lambda: usize,
    /// Data blocks per initial stripe
    #[arg(long)]
    ki: usize,
    /// Parity blocks per initial stripe
    #[arg(long)]
    ri: usize,
    /// Parity blocks of the final stripe
    #[arg(long)]
    rf: usize,
}

impl ParamArgs {
    fn params(&self) -> Result<MergeParams> {
        MergeParams::new(self.lambda, self.ki, self.ri, self.rf)
    }
}

#[derive(Args)]
struct ConstructArgs {
    /// Construction scheme: auto, general, hankel1, hankel2, hankel-s, trivial
    #[arg(long, default_value = "auto")]
    scheme: String,
    #[command(flatten)]
    params: ParamArgs,
    /// Group count for the hankel-s scheme (lambda <= s <= rI)
    #[arg(long)]
    s: Option<usize>,
    /// Field characteristic for the general scheme (default 2)
    #[arg(long = "char")]
    characteristic: Option<u64>,
    /// Exact field order for hankel/trivial schemes (default: the smallest
    /// order the scheme admits)
    #[arg(long = "field-q")]
    field_q: Option<u128>,
    /// Where to write the code manifest
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EncodeArgs {
    /// Code manifest path
    #[arg(long)]
    code: PathBuf,
    /// Raw message file (fixed-width big-endian chunks, position-major)
    #[arg(long, conflicts_with_all = ["random", "seed"])]
    input: Option<PathBuf>,
    /// Generate a random message with this block length instead
    #[arg(long, value_name = "B")]
    random: Option<usize>,
    /// Seed for --random (default 0)
    #[arg(long, requires = "random")]
    seed: Option<u64>,
    /// Output directory; stripe i lands in <out>/stripe-<i>
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ConvertArgs {
    /// Code manifest path
    #[arg(long)]
    code: PathBuf,
    /// Directory holding stripe-1 .. stripe-lambda
    #[arg(long)]
    stripes: PathBuf,
    /// Output stripe store for the merged stripe
    #[arg(long)]
    out: PathBuf,
    /// Where to write the access report JSON (also printed to stdout)
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct DecodeArgs {
    /// Code manifest path
    #[arg(long)]
    code: PathBuf,
    /// Stripe store to decode (initial or final, inferred from its shape)
    #[arg(long)]
    stripe: PathBuf,
    /// Block positions to drop before decoding, e.g. --erase 3,7
    #[arg(long, value_delimiter = ',')]
    erase: Vec<usize>,
    /// Where to write the recovered raw bytes
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Code manifest path
    #[arg(long)]
    code: PathBuf,
    /// Exhaustive erasure check of both generators
    #[arg(long)]
    mds: bool,
    /// Per-stripe constructibility witnesses at t = rF
    #[arg(long)]
    constructible: bool,
    /// Exhaustive minimum-read-set search against the closed form
    #[arg(long = "min-reads")]
    min_reads: bool,
    /// Run every check (default when no check is named)
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    params: ParamArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Io(_) | Error::Format { .. } => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct(args) => run_construct(args).map(|_| ExitCode::SUCCESS),
        Command::Encode(args) => run_encode(args).map(|_| ExitCode::SUCCESS),
        Command::Convert(args) => run_convert(args, false).map(|_| ExitCode::SUCCESS),
        Command::Reencode(args) => run_convert(args, true).map(|_| ExitCode::SUCCESS),
        Command::Decode(args) => run_decode(args).map(|_| ExitCode::SUCCESS),
        Command::Verify(args) => Ok(if run_verify(args)? {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }),
        Command::Bounds(args) => run_bounds(args).map(|_| ExitCode::SUCCESS),
    }
}

fn load_code(path: &Path) -> Result<ConvertibleCode> {
    manifest::from_manifest_str(&fs::read_to_string(path).map_err(|e| store::io_at(path, e))?)
}

fn read_initial_stripes(dir: &Path, code: &ConvertibleCode) -> Result<Vec<Stripe>> {
    (1..=code.params().lambda)
        .map(|i| store::read_stripe(&dir.join(format!("stripe-{i}")), code.field()))
        .collect()
}

fn run_construct(args: ConstructArgs) -> Result<()> {
    let params = args.params.params()?;
    let code = match args.scheme.as_str() {
        "auto" => {
            if args.s.is_some() || args.characteristic.is_some() || args.field_q.is_some() {
                return Err(Error::InvalidParams(
                    "--scheme auto picks s and the field itself; drop --s/--char/--field-q"
                        .to_string(),
                ));
            }
            auto_construction(&params)?
        }
        "general" => {
            if args.field_q.is_some() {
                return Err(Error::InvalidParams(
                    "the general scheme sizes its own field; use --char to pick the characteristic"
                        .to_string(),
                ));
            }
            general_construction(&params, args.characteristic.unwrap_or(2))?
        }
        name @ ("hankel1" | "hankel2" | "hankel-s" | "trivial") => {
            if args.characteristic.is_some() {
                return Err(Error::InvalidParams(
                    "--char only applies to the general scheme; use --field-q".to_string(),
                ));
            }
            let scheme = match name {
                "hankel1" => Scheme::Hankel1,
                "hankel2" => Scheme::Hankel2,
                "hankel-s" => Scheme::HankelS(args.s.ok_or_else(|| {
                    Error::InvalidParams("--scheme hankel-s requires --s".to_string())
                })?),
                _ => Scheme::Trivial,
            };
            let field = match args.field_q {
                Some(q) => Field::of_order(q)?,
                None => smallest_field_of_order_at_least(required_field_order(&params, scheme)?)?,
            };
            match scheme {
                Scheme::Hankel1 => hankel1(&params, &field)?,
                Scheme::Hankel2 => hankel2(&params, &field)?,
                Scheme::HankelS(s) => hankel_family(&params, &field, s)?,
                Scheme::Trivial => trivial_construction(&params, &field)?,
                Scheme::General => unreachable!(),
            }
        }
        other => {
            return Err(Error::InvalidParams(format!(
                "unknown scheme {other}; choose auto, general, hankel1, hankel2, hankel-s or trivial"
            )))
        }
    };

    fs::write(&args.out, manifest::to_manifest_string(&code))
        .map_err(|e| store::io_at(&args.out, e))?;
    match code.scheme().s() {
        Some(s) => println!("scheme: {} (s = {s})", code.scheme()),
        None => println!("scheme: {}", code.scheme()),
    }
    println!("field: {}", code.field());
    println!("access lower bound: {}", access_lower_bound(&params));
    Ok(())
}

fn run_encode(args: EncodeArgs) -> Result<()> {
    let code = load_code(&args.code)?;
    let params = code.params();
    let rows = params.k_f();
    let msg = match (&args.input, args.random) {
        (Some(path), None) => {
            store::raw_to_message(code.field(), rows, &fs::read(path).map_err(|e| store::io_at(path, e))?)?
        }
        (None, Some(block_length)) => MessageBuffer::random(
            code.field(),
            rows,
            block_length,
            args.seed.unwrap_or(0),
        ),
        _ => {
            return Err(Error::InvalidParams(
                "provide exactly one of --input or --random".to_string(),
            ))
        }
    };
    let stripes = encode_initial(&msg, &code)?;
    for (i, stripe) in stripes.iter().enumerate() {
        store::write_stripe(
            &args.out.join(format!("stripe-{}", i + 1)),
            stripe,
            code.field(),
        )?;
    }
    println!(
        "wrote {} stripes of block length {} to {}",
        stripes.len(),
        msg.cols(),
        args.out.display()
    );
    Ok(())
}

fn run_convert(args: ConvertArgs, baseline: bool) -> Result<()> {
    let code = load_code(&args.code)?;
    let stripes = read_initial_stripes(&args.stripes, &code)?;
    let (merged, report) = if baseline {
        reencode_baseline(&stripes, &code)?
    } else {
        convert(&stripes, &code)?
    };
    store::write_stripe(&args.out, &merged, code.field())?;
    let json = report.to_json();
    if let Some(path) = &args.report {
        fs::write(path, format!("{json}\n")).map_err(|e| store::io_at(path, e))?;
    }
    println!("{json}");
    Ok(())
}

fn run_decode(args: DecodeArgs) -> Result<()> {
    let code = load_code(&args.code)?;
    let stripe = store::read_stripe(&args.stripe, code.field())?;
    let stripe = stripe.without_blocks(&args.erase);
    let rows = decode(&stripe, &code, &stripe.present_indices())?;
    let msg = MessageBuffer::from_rows(code.field(), rows)?;
    fs::write(&args.out, store::message_to_raw(&msg)).map_err(|e| store::io_at(&args.out, e))?;
    println!(
        "decoded {} rows x {} positions to {}",
        msg.rows(),
        msg.cols(),
        args.out.display()
    );
    Ok(())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn run_verify(args: VerifyArgs) -> Result<bool> {
    let code = load_code(&args.code)?;
    let params = code.params();
    let all = args.all || (!args.mds && !args.constructible && !args.min_reads);
    let mut ok = true;

    if args.mds || all {
        let initial = is_mds_by_erasure(&code.generator_initial())
            && code.p_i().is_superregular();
        let final_ = is_mds_by_erasure(&code.generator_final())
            && code.p_f().is_superregular();
        println!(
            "mds initial ({};{}): {}",
            params.n_i(),
            params.k_i,
            verdict(initial)
        );
        println!(
            "mds final ({};{}): {}",
            params.n_f(),
            params.k_f(),
            verdict(final_)
        );
        ok &= initial && final_;
    }

    if args.constructible || all {
        if code.scheme() == Scheme::Trivial {
            println!("constructible: skipped (the trivial scheme reads data blocks directly)");
        } else {
            match is_block_constructible(code.p_f(), code.p_i(), params.r_f) {
                Some(witnesses) => {
                    println!(
                        "constructible at t = {}: pass (witness columns per stripe: {:?})",
                        params.r_f, witnesses
                    );
                }
                None => {
                    println!("constructible at t = {}: FAIL", params.r_f);
                    ok = false;
                }
            }
        }
    }

    if args.min_reads || all {
        match min_read_set_search(&code) {
            Ok(found) => {
                let want = params.lambda * read_lower_bound_per_stripe(params);
                let good = found == want;
                println!("min read set: {found} (closed form {want}): {}", verdict(good));
                ok &= good;
            }
            Err(Error::InstanceTooLarge(detail)) => {
                println!("min read set: skipped ({detail})");
            }
            Err(other) => return Err(other),
        }
    }

    if all {
        let stable = check_stability(&code);
        println!("stability: {}", verdict(stable));
        let sound = check_plan_soundness(&code);
        println!("plan soundness: {}", verdict(sound));
        ok &= stable && sound;
    }

    println!("result: {}", if ok { "pass" } else { "fail" });
    Ok(ok)
}

fn run_bounds(args: BoundsArgs) -> Result<()> {
    let params = args.params.params()?;
    println!("access lower bound: {}", access_lower_bound(&params));
    println!(
        "baseline (read all data, write all parities): {}",
        params.n_f()
    );
    println!(
        "minimum reads per stripe: {}",
        read_lower_bound_per_stripe(&params)
    );
    println!("maximum unchanged blocks: {}", max_unchanged(&params));
    Ok(())
}
