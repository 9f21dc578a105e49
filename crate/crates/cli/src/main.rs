use std::fs::File;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use dcoset::criterion::Strategy;
use dcoset::fforacle::{build_formed_space, enumerate_flags, Budget};
use dcoset_cli::{
    parse_budget, parse_q_list, parse_query, run_classify, run_oracle, run_sweep, run_witness, tables, Output, Render,
    SweepOptions,
};

/// Finiteness of double coset collections X\G/P for classical groups.
#[derive(Parser)]
#[command(name = "dcoset", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    /// Field sizes for orbit counts, e.g. 2,3,5.
    #[arg(long, global = true)]
    oracle: Option<String>,

    /// Witness search: lemma, b2a3 or full.
    #[arg(long, global = true)]
    strategy: Option<Strategy>,

    /// Oracle limits as <flags>,<seconds>.
    #[arg(long, global = true, value_parser = parse_budget)]
    budget: Option<Budget>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Table verdict and deciding clause, e.g. `classify C4 C2*C2 P1`.
    Classify { group: String, subgroup: String, parabolic: String },
    /// Search for a root-system witness of infiniteness.
    Witness { group: String, subgroup: String, parabolic: String },
    /// Count orbits over small prime fields.
    Oracle {
        group: String,
        subgroup: String,
        parabolic: String,
        /// Write the flag set over the first field to this CSV file.
        #[arg(long)]
        flags_csv: Option<String>,
    },
    /// Every maximal rank subgroup and maximal parabolic up to a rank bound.
    Sweep {
        rank_bound: usize,
        /// Also run the oracle (rank bound at most 4).
        #[arg(long)]
        with_oracle: bool,
    },
    /// Print the embedded spherical list, finiteness clauses and infinite cases.
    Tables,
}

fn query(cmd: &str, g: &str, x: &str, p: &str, cli: &Cli) -> Result<dcoset_cli::Query> {
    let mut q = parse_query(&format!("{cmd} {g} {x} {p}")).with_context(|| format!("cannot parse '{cmd} {g} {x} {p}'"))?;
    q.q_list = fields(cli)?;
    q.strategy = cli.strategy;
    q.output = cli.output;
    Ok(q)
}

fn fields(cli: &Cli) -> Result<Option<Vec<u32>>> {
    Ok(cli.oracle.as_deref().map(parse_q_list).transpose()?)
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let budget = cli.budget.unwrap_or_default();
    Ok(match &cli.command {
        Cmd::Classify { group, subgroup, parabolic } => {
            let r = run_classify(&query("classify", group, subgroup, parabolic, cli)?, &budget)?;
            (r.render(cli.output)?, r.agreement)
        }
        Cmd::Witness { group, subgroup, parabolic } => {
            let r = run_witness(&query("witness", group, subgroup, parabolic, cli)?)?;
            (r.render(cli.output)?, true)
        }
        Cmd::Oracle {
            group,
            subgroup,
            parabolic,
            flags_csv,
        } => {
            let q = query("oracle", group, subgroup, parabolic, cli)?;
            let r = run_oracle(&q, &budget)?;
            if let Some(path) = flags_csv {
                let first = r.counts.first().map(|c| c.q).context("no field was counted")?;
                let space = build_formed_space(q.group.0, q.group.1, first)?;
                let flags = enumerate_flags(&space, &q.parabolic, &budget)?;
                let file = File::create(path).with_context(|| format!("cannot create {path}"))?;
                flags.write_csv(file)?;
            }
            (r.render(cli.output)?, true)
        }
        Cmd::Sweep { rank_bound, with_oracle } => {
            let opts = SweepOptions {
                strategy: cli.strategy.unwrap_or(Strategy::LemmaBases),
                oracle: if *with_oracle { Some(fields(cli)?) } else { None },
                budget,
            };
            let r = run_sweep(*rank_bound, &opts)?;
            (r.render(cli.output)?, r.disagreements == 0)
        }
        Cmd::Tables => (tables().render(cli.output)?, true),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
