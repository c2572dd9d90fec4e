//! Command handlers for the `mohgen` binary. Each handler writes to the
//! given streams and returns the process exit code.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use mohgen_core::document::emit;
use mohgen_core::forge::{binomial_identity_values, build_generators, ForgeError, GeneratorSet};
use mohgen_core::groebner::{
    buchberger_check, ideal_equal, ideal_equal_local, kernel_oracle, n1_basis, n1_short_generators,
    BuchbergerOptions, GroebnerError, OrderedBasis,
};
use mohgen_core::params::{validate_and_derive, MohParams};
use mohgen_core::poly::to_sigma_graded_string;
use mohgen_core::verify::{
    parse_grid, run_grid, run_suite, Suite, VerificationReport, VerifyError,
};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_CONSTRUCTION: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "mohgen",
    version,
    about = "Generators of Moh's space-curve ideals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the n+1 generators for (n, lambda).
    Generate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        lambda: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite at one point or over a grid.
    Verify {
        #[arg(long, required_unless_present = "grid", conflicts_with = "grid")]
        n: Option<u32>,
        #[arg(long, required_unless_present = "grid", conflicts_with = "grid")]
        lambda: Option<u64>,
        /// `"n1,n2,...;count"`: the `count` smallest valid lambda for each n.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Buchberger's criterion on the n = 1 basis g1..g4.
    GbCheck {
        #[arg(long)]
        lambda: u64,
        /// Also compute S-polynomials of pairs with coprime leading terms.
        #[arg(long)]
        no_skip_coprime: bool,
    },
    /// Implicitize the n = 1 curve by elimination and compare ideals.
    KernelOracle {
        #[arg(long)]
        lambda: u64,
        /// Maximum number of S-pairs processed per Gröbner completion.
        #[arg(long, default_value_t = BuchbergerOptions::default().max_pairs)]
        budget: usize,
    },
    /// Evaluate the two alternating binomial sums for every m' <= m.
    Identities {
        #[arg(long)]
        m: u64,
    },
}

type Out<'a> = &'a mut dyn Write;

pub fn run(cli: Cli, out: Out, err: Out) -> u8 {
    match cli.command {
        Command::Generate {
            n,
            lambda,
            format,
            out: path,
        } => cmd_generate(n, lambda, format, path, out, err),
        Command::Verify {
            n,
            lambda,
            grid,
            suite,
            format,
        } => cmd_verify(n, lambda, grid, &suite, format, out, err),
        Command::GbCheck {
            lambda,
            no_skip_coprime,
        } => cmd_gb_check(lambda, !no_skip_coprime, out, err),
        Command::KernelOracle { lambda, budget } => cmd_kernel_oracle(lambda, budget, out, err),
        Command::Identities { m } => cmd_identities(m, out, err),
    }
}

fn forge_exit(e: &ForgeError) -> u8 {
    match e {
        ForgeError::Param(_) => EXIT_INVALID,
        _ => EXIT_CONSTRUCTION,
    }
}

fn verify_exit(e: &VerifyError) -> u8 {
    match e {
        VerifyError::Param(_)
        | VerifyError::SuiteNeedsN1(_)
        | VerifyError::UnknownSuite(_)
        | VerifyError::BadGrid(_) => EXIT_INVALID,
        VerifyError::Construction(_) => EXIT_CONSTRUCTION,
        VerifyError::Groebner(GroebnerError::ResourceBudgetExceeded { .. }) => EXIT_BUDGET,
        VerifyError::Groebner(_) => EXIT_CONSTRUCTION,
    }
}

fn groebner_exit(e: &GroebnerError) -> u8 {
    match e {
        GroebnerError::ResourceBudgetExceeded { .. } => EXIT_BUDGET,
        GroebnerError::NotN1(_) => EXIT_INVALID,
        _ => EXIT_CONSTRUCTION,
    }
}

/// Text rendering of a generator set in primitive scaling.
pub fn render_text(set: &GeneratorSet) -> String {
    let g = set.grading();
    let scales = set.display_scales();
    let p = &set.params;
    let mut s = format!("n = {}, lambda = {}, m = {}\n", p.n, p.lambda, p.m);
    s.push_str("generators:\n");
    for (i, f) in set.display_strings().iter().enumerate() {
        s.push_str(&format!("  f{} = {f}\n", i + 1));
    }
    for (title, parts) in [("sigma parts:", &set.sigma_parts), ("tails:", &set.tails)] {
        s.push_str(title);
        s.push('\n');
        for (i, f) in parts.iter().enumerate() {
            let scaled = f.scale(&scales[i]);
            s.push_str(&format!(
                "  f{} = {}\n",
                i + 1,
                to_sigma_graded_string(&scaled, &g)
            ));
        }
    }
    let t = set.display_tables();
    for (name, table) in [("c", &t.c), ("a", &t.a), ("d", &t.d)] {
        s.push_str(&format!("{name}:\n"));
        for ((i, j), v) in table {
            s.push_str(&format!("  {name}({i},{j}) = {v}\n"));
        }
    }
    s
}

fn cmd_generate(
    n: u32,
    lambda: u64,
    format: Format,
    path: Option<PathBuf>,
    out: Out,
    err: Out,
) -> u8 {
    let set = match build_generators(n, lambda) {
        Ok(set) => set,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return forge_exit(&e);
        }
    };
    let body = match format {
        Format::Text => render_text(&set),
        Format::Json => emit(&set) + "\n",
    };
    match path {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, body) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return EXIT_FAIL;
            }
        }
        None => {
            let _ = out.write_all(body.as_bytes());
        }
    }
    EXIT_PASS
}

fn print_report(report: &VerificationReport, format: Format, out: Out, err: Out) {
    match format {
        Format::Text => {
            let _ = out.write_all(report.to_text().as_bytes());
        }
        Format::Json => {
            let _ = writeln!(out, "{}", report.to_json());
        }
    }
    for c in report.failures() {
        let _ = writeln!(
            err,
            "FAIL n={} lambda={} {}: {}",
            report.n,
            report.lambda,
            c.name,
            c.witness.as_deref().unwrap_or("")
        );
    }
}

fn cmd_verify(
    n: Option<u32>,
    lambda: Option<u64>,
    grid: Option<String>,
    suite: &str,
    format: Format,
    out: Out,
    err: Out,
) -> u8 {
    let suite: Suite = match suite.parse() {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    let points = match (grid, n, lambda) {
        (Some(text), _, _) => match parse_grid(&text) {
            Ok(points) => points,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return verify_exit(&e);
            }
        },
        (None, Some(n), Some(l)) => vec![(n, l)],
        _ => {
            let _ = writeln!(err, "error: give --n and --lambda, or --grid");
            return EXIT_INVALID;
        }
    };
    let results = if points.len() == 1 {
        let (n, l) = points[0];
        vec![((n, l), run_suite(n, l, suite))]
    } else {
        run_grid(&points, suite)
    };
    let mut code = EXIT_PASS;
    for ((n, l), result) in results {
        match result {
            Ok(report) => {
                print_report(&report, format, out, err);
                if !report.passed() {
                    code = code.max(EXIT_FAIL);
                }
            }
            Err(e) => {
                let _ = writeln!(err, "error at n={n} lambda={l}: {e}");
                code = code.max(verify_exit(&e));
            }
        }
    }
    code
}

fn n1_params(lambda: u64, err: Out) -> Result<MohParams, u8> {
    validate_and_derive(1, lambda).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_INVALID
    })
}

fn cmd_gb_check(lambda: u64, skip_coprime: bool, out: Out, err: Out) -> u8 {
    let params = match n1_params(lambda, err) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let basis = match n1_basis(&params) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return groebner_exit(&e);
        }
    };
    let _ = writeln!(
        out,
        "lambda = {lambda}: r = {}, p = {}",
        params.sec2_r, params.sec2_p
    );
    for (i, g) in basis.polys().iter().enumerate() {
        let _ = writeln!(out, "  g{} = {g}", i + 1);
    }
    let check = buchberger_check(&basis, skip_coprime);
    let _ = writeln!(
        out,
        "S-pairs reduced: {}, skipped (coprime leading terms): {}",
        check.pairs_examined, check.pairs_skipped_coprime
    );
    if check.is_groebner() {
        let _ = writeln!(out, "PASS: g1..g4 form a lex Gröbner basis");
        EXIT_PASS
    } else {
        for (i, j, r) in &check.witnesses {
            let _ = writeln!(err, "FAIL: S(g{}, g{}) reduces to {r}", i + 1, j + 1);
        }
        EXIT_FAIL
    }
}

fn cmd_kernel_oracle(lambda: u64, budget: usize, out: Out, err: Out) -> u8 {
    let params = match n1_params(lambda, err) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let opts = BuchbergerOptions {
        max_pairs: budget,
        ..Default::default()
    };
    let outcome = (|| -> Result<(OrderedBasis<3>, bool, bool, bool), GroebnerError> {
        let oracle = kernel_oracle(&params, &opts)?;
        let short = n1_short_generators(&params)?;
        let set = build_generators(1, lambda).expect("validated parameters");
        let forged = OrderedBasis::new(set.generators)?;
        let with_short = ideal_equal(&oracle, &short, &opts)?;
        let forge_local = ideal_equal_local(&oracle, &forged, &opts)?;
        let forge_poly = ideal_equal(&oracle, &forged, &opts)?;
        Ok((oracle, with_short, forge_local, forge_poly))
    })();
    let (oracle, with_short, forge_local, forge_poly) = match outcome {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return groebner_exit(&e);
        }
    };
    let short_name = if params.sec2_r == 3 {
        "<g2, g3, g4>"
    } else {
        "<g3, g4>"
    };
    let _ = writeln!(out, "elimination ideal for lambda = {lambda}:");
    for g in oracle.polys() {
        let _ = writeln!(out, "  {g}");
    }
    let yes = |b: bool| if b { "equal" } else { "different" };
    let _ = writeln!(out, "oracle vs {short_name}: {}", yes(with_short));
    let _ = writeln!(
        out,
        "oracle vs forge output, at the origin: {}",
        yes(forge_local)
    );
    let _ = writeln!(
        out,
        "oracle vs forge output, polynomial ring: {}",
        yes(forge_poly)
    );
    if with_short && forge_local {
        EXIT_PASS
    } else {
        let _ = writeln!(err, "FAIL: ideals differ");
        EXIT_FAIL
    }
}

fn cmd_identities(m: u64, out: Out, err: Out) -> u8 {
    if m == 0 {
        let _ = writeln!(err, "error: m must be at least 1");
        return EXIT_INVALID;
    }
    let mut code = EXIT_PASS;
    for mm in 1..=m {
        let (nu, mu) = binomial_identity_values(mm);
        for (name, vals) in [("nu", &nu), ("mu", &mu)] {
            for (l, v) in vals.iter().enumerate() {
                if *v != 0.into() {
                    let _ = writeln!(err, "FAIL: m = {mm}, {name}_{l} = {v}");
                    code = EXIT_FAIL;
                }
            }
        }
    }
    if code == EXIT_PASS {
        let _ = writeln!(out, "PASS: nu_l and mu_l vanish for every m in 1..={m}");
    }
    code
}
