//! Queries, reports and rendering behind the `dcoset` binary.

use std::fmt;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use dcoset::criterion::{sweep_groups, CriterionReport, CriterionVerdict, Searcher, Strategy};
use dcoset::fforacle::{default_q_list, Budget, Evidence, Oracle, StabilizationReport};
use dcoset::rootsys::{Family, RootSystem, MAX_RANK};
use dcoset::subgroups::tables::{exception_rows, infinite_rows, spherical_rows, Nodes, D4_TRIALITY_LABEL};
use dcoset::subgroups::{
    enumerate_maximal_rank_subgroups, parse_group, parse_parabolic, parse_subgroup, Classifier, Finiteness,
    ParabolicSpec, SubgroupSpec,
};
use dcoset::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Classify,
    Witness,
    Oracle,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Classify => "classify",
            Command::Witness => "witness",
            Command::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Json,
    Csv,
    #[default]
    Text,
}

/// One `(G, X, P)` request.
#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    pub command: Command,
    pub group: (Family, usize),
    pub subgroup: SubgroupSpec,
    pub parabolic: ParabolicSpec,
    pub q_list: Option<Vec<u32>>,
    pub strategy: Option<Strategy>,
    pub output: Output,
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (fam, n) = self.group;
        write!(f, "{} {fam}{n} {} {}", self.command, self.subgroup, self.parabolic)
    }
}

/// Moves a parse error to its column in the whole query.
fn at(offset: usize, e: Error) -> Error {
    match e {
        Error::Parse { column, message } => Error::Parse {
            column: offset + column,
            message,
        },
        other => Error::Parse {
            column: offset,
            message: other.to_string(),
        },
    }
}

/// Parses `<command> <G> <X> <P>`, e.g. `classify C4 C2*C2 P1`.
pub fn parse_query(text: &str) -> Result<Query> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices().chain([(text.len(), ' ')]) {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                tokens.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    let missing = |what: &str| Error::Parse {
        column: text.len(),
        message: format!("missing {what}"),
    };
    let &(c0, cmd) = tokens.first().ok_or_else(|| missing("command"))?;
    let command = match cmd {
        "classify" => Command::Classify,
        "witness" => Command::Witness,
        "oracle" => Command::Oracle,
        _ => {
            return Err(Error::Parse {
                column: c0,
                message: format!("unknown command '{cmd}'"),
            })
        }
    };
    let &(c1, g) = tokens.get(1).ok_or_else(|| missing("group"))?;
    let group = parse_group(g).map_err(|e| at(c1, e))?;
    let &(c2, x) = tokens.get(2).ok_or_else(|| missing("subgroup"))?;
    let subgroup = parse_subgroup(group, x).map_err(|e| at(c2, e))?;
    let &(c3, p) = tokens.get(3).ok_or_else(|| missing("parabolic"))?;
    let parabolic = parse_parabolic(group, p).map_err(|e| at(c3, e))?;
    if let Some(&(c4, extra)) = tokens.get(4) {
        return Err(Error::Parse {
            column: c4,
            message: format!("unexpected '{extra}'"),
        });
    }
    Ok(Query {
        command,
        group,
        subgroup,
        parabolic,
        q_list: None,
        strategy: None,
        output: Output::default(),
    })
}

/// Parses `2,3,5`.
pub fn parse_q_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Unsupported(format!("field size '{t}'")))
        })
        .collect()
}

/// Parses `<flags>,<seconds>`.
pub fn parse_budget(s: &str) -> Result<Budget> {
    let bad = || Error::Unsupported(format!("budget '{s}', expected <flags>,<seconds>"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok(Budget {
        max_flags: a.trim().parse().map_err(|_| bad())?,
        max_seconds: b.trim().parse().map_err(|_| bad())?,
    })
}

/// Whether the sources agree: a witness or a prefilter means infinite, silence
/// means finite, and Inconclusive evidence is compatible with anything.
pub fn agrees(verdict: Finiteness, criterion: Option<CriterionVerdict>, oracle: Option<Evidence>) -> bool {
    let crit_ok = match criterion {
        None => true,
        Some(CriterionVerdict::NoWitnessFound) => verdict == Finiteness::Finite,
        Some(_) => verdict == Finiteness::Infinite,
    };
    let oracle_ok = match oracle {
        Some(Evidence::Growing) => verdict == Finiteness::Infinite,
        Some(Evidence::Bounded) => verdict == Finiteness::Finite,
        _ => true,
    };
    crit_ok && oracle_ok
}

fn oracle_q_list(family: Family, verdict: Finiteness, custom: Option<&[u32]>) -> Vec<u32> {
    custom
        .map(<[u32]>::to_vec)
        .unwrap_or_else(|| default_q_list(family, verdict == Finiteness::Infinite))
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub query: String,
    pub verdict: Finiteness,
    pub provenance: String,
    pub criterion: Option<CriterionReport>,
    pub oracle: Option<StabilizationReport>,
    pub agreement: bool,
}

/// Table verdict with its clause, plus the criterion and oracle when requested.
pub fn run_classify(q: &Query, budget: &Budget) -> Result<ClassifyReport> {
    let g = RootSystem::new(q.group.0, q.group.1)?;
    let v = Classifier::new(g.clone()).classify(&q.subgroup, &q.parabolic)?;
    let criterion = match q.strategy {
        Some(s) => Some(Searcher::new(g).report(&q.subgroup, &q.parabolic, s)?),
        None => None,
    };
    let oracle = match &q.q_list {
        Some(list) => Some(Oracle::new(*budget).stabilization_test(&q.subgroup, &q.parabolic, list)?),
        None => None,
    };
    Ok(ClassifyReport {
        query: q.to_string(),
        verdict: v.value,
        provenance: v.provenance.to_string(),
        agreement: agrees(v.value, criterion.as_ref().map(|c| c.verdict), oracle.as_ref().map(|o| o.verdict)),
        criterion,
        oracle,
    })
}

/// The criterion report under the query's strategy (default `lemma`).
pub fn run_witness(q: &Query) -> Result<CriterionReport> {
    let g = RootSystem::new(q.group.0, q.group.1)?;
    Searcher::new(g).report(&q.subgroup, &q.parabolic, q.strategy.unwrap_or(Strategy::LemmaBases))
}

/// Orbit counts over the query's fields (default `2,3,5`, or `3,5,7` in type `B`).
pub fn run_oracle(q: &Query, budget: &Budget) -> Result<StabilizationReport> {
    let list = oracle_q_list(q.group.0, Finiteness::Finite, q.q_list.as_deref());
    Oracle::new(*budget).stabilization_test(&q.subgroup, &q.parabolic, &list)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub group: String,
    pub subgroup: String,
    pub parabolic: String,
    pub table_verdict: Finiteness,
    pub provenance: String,
    pub criterion: CriterionVerdict,
    pub oracle: Option<Evidence>,
    pub oracle_counts: Option<Vec<usize>>,
    pub agreement: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub rank_bound: usize,
    pub strategy: Strategy,
    pub rows: Vec<SweepRow>,
    pub agreements: usize,
    pub disagreements: usize,
}

/// Options for [`run_sweep`].
#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub strategy: Strategy,
    /// Run the oracle, optionally over fixed fields.
    pub oracle: Option<Option<Vec<u32>>>,
    pub budget: Budget,
}

/// Every `(G, X, P)` with `rank G <= rank_bound`, `X` of maximal rank defined
/// over `Z` and `P` maximal, with all verdict columns filled.
pub fn run_sweep(rank_bound: usize, opts: &SweepOptions) -> Result<SweepReport> {
    let cap = if opts.oracle.is_some() { 4 } else { MAX_RANK };
    if rank_bound > cap {
        return Err(Error::RankBound { rank: rank_bound, bound: cap });
    }
    let mut rows = Vec::new();
    for g in sweep_groups(rank_bound) {
        let classifier = Classifier::new(g.clone());
        let searcher = Searcher::new(g.clone());
        let oracle = Oracle::new(opts.budget);
        for e in enumerate_maximal_rank_subgroups(&g, true)? {
            for node in 1..=g.rank {
                let p = ParabolicSpec::maximal((g.family, g.rank), node)?;
                let v = classifier.classify(&e.spec, &p)?;
                let c = searcher.report(&e.spec, &p, opts.strategy)?;
                let o = match &opts.oracle {
                    Some(custom) => {
                        let list = oracle_q_list(g.family, v.value, custom.as_deref());
                        Some(oracle.stabilization_test(&e.spec, &p, &list)?)
                    }
                    None => None,
                };
                rows.push(SweepRow {
                    group: g.name(),
                    subgroup: e.spec.to_string(),
                    parabolic: p.to_string(),
                    table_verdict: v.value,
                    provenance: v.provenance.to_string(),
                    criterion: c.verdict,
                    oracle: o.as_ref().map(|o| o.verdict),
                    oracle_counts: o.as_ref().map(|o| o.counts.iter().map(|c| c.orbits).collect()),
                    agreement: agrees(v.value, Some(c.verdict), o.as_ref().map(|o| o.verdict)),
                });
            }
        }
    }
    let agreements = rows.iter().filter(|r| r.agreement).count();
    Ok(SweepReport {
        rank_bound,
        strategy: opts.strategy,
        disagreements: rows.len() - agreements,
        agreements,
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TableEntry {
    pub section: &'static str,
    pub family: String,
    pub label: &'static str,
    pub nodes: Nodes,
}

/// The embedded spherical list, finiteness clauses and maximal infinite cases.
pub fn tables() -> Vec<TableEntry> {
    let entry = |section, r: dcoset::subgroups::tables::Row| TableEntry {
        section,
        family: r.family.to_string(),
        label: r.label,
        nodes: r.nodes,
    };
    let mut out: Vec<TableEntry> = spherical_rows().into_iter().map(|r| entry("spherical", r)).collect();
    out.extend(exception_rows().into_iter().map(|r| entry("finite", r)));
    out.push(TableEntry {
        section: "finite",
        family: Family::D.to_string(),
        label: D4_TRIALITY_LABEL,
        nodes: Nodes::Fork,
    });
    out.extend(infinite_rows().into_iter().map(|r| entry("infinite", r)));
    out
}

/// Anything the binary prints.
pub trait Render: Serialize {
    fn csv_records(&self) -> (Vec<&'static str>, Vec<Vec<String>>);
    fn text(&self) -> String;

    fn render(&self, output: Output) -> Result<String> {
        match output {
            Output::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Output::Csv => {
                let io = |e: csv::Error| Error::Io(e.to_string());
                let (header, records) = self.csv_records();
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&header).map_err(io)?;
                for r in records {
                    w.write_record(&r).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
            }
            Output::Text => Ok(self.text()),
        }
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn counts(r: &StabilizationReport) -> String {
    r.counts.iter().map(|c| c.orbits.to_string()).collect::<Vec<_>>().join(" ")
}

fn witness_text(c: &CriterionReport) -> String {
    let mut s = format!("{:?} (strategy {}, {} subsystems examined)", c.verdict, c.strategy, c.search_space_size);
    if let Some(w) = &c.witness {
        let base = |b: &[dcoset::rootsys::Root]| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let _ = write!(
            s,
            "\n  phi1 base: {}\n  phi2 base: {}\n  value {}, margin {}",
            base(&w.phi1.base),
            base(&w.phi2.base),
            w.value,
            w.margin
        );
    }
    s
}

fn oracle_text(o: &StabilizationReport) -> String {
    let mut s = format!("{} over q = ", o.verdict);
    let qs: Vec<String> = o.counts.iter().map(|c| c.q.to_string()).collect();
    let _ = write!(s, "{} with orbit counts [{}] ({})", qs.join(","), counts(o), o.group);
    if let Some(b) = &o.budget_exceeded {
        let _ = write!(s, "; budget exceeded at {b}");
    }
    s
}

impl Render for ClassifyReport {
    fn csv_records(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let header = vec!["query", "verdict", "provenance", "criterion", "witness_value", "oracle", "counts", "agreement"];
        let row = vec![
            self.query.clone(),
            self.verdict.to_string(),
            self.provenance.clone(),
            self.criterion.as_ref().map(|c| format!("{:?}", c.verdict)).unwrap_or_default(),
            self.criterion.as_ref().and_then(|c| c.witness.as_ref()).map(|w| w.value.to_string()).unwrap_or_default(),
            opt(&self.oracle.as_ref().map(|o| o.verdict)),
            self.oracle.as_ref().map(counts).unwrap_or_default(),
            self.agreement.to_string(),
        ];
        (header, vec![row])
    }

    fn text(&self) -> String {
        let mut s = format!("{}: {} ({})\n", self.query, self.verdict, self.provenance);
        if let Some(c) = &self.criterion {
            let _ = writeln!(s, "criterion: {}", witness_text(c));
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(s, "oracle: {}", oracle_text(o));
        }
        if !self.agreement {
            s.push_str("DISAGREEMENT\n");
        }
        s
    }
}

impl Render for CriterionReport {
    fn csv_records(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let header = vec!["verdict", "strategy", "examined", "phi1_base", "phi2_base", "value", "margin"];
        let base = |b: &[dcoset::rootsys::Root]| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let w = self.witness.as_ref();
        let row = vec![
            format!("{:?}", self.verdict),
            self.strategy.to_string(),
            self.search_space_size.to_string(),
            w.map(|w| base(&w.phi1.base)).unwrap_or_default(),
            w.map(|w| base(&w.phi2.base)).unwrap_or_default(),
            opt(&w.map(|w| w.value)),
            opt(&w.map(|w| w.margin)),
        ];
        (header, vec![row])
    }

    fn text(&self) -> String {
        witness_text(self) + "\n"
    }
}

impl Render for StabilizationReport {
    fn csv_records(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let header = vec!["q", "points", "orbits", "sizes"];
        let rows = self
            .counts
            .iter()
            .map(|c| {
                let sizes: Vec<String> = c.sizes.iter().map(ToString::to_string).collect();
                vec![c.q.to_string(), c.points.to_string(), c.orbits.to_string(), sizes.join(" ")]
            })
            .collect();
        (header, rows)
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.counts {
            let _ = writeln!(s, "q = {}: {} points, {} orbits", c.q, c.points, c.orbits);
        }
        s + &oracle_text(self) + "\n"
    }
}

impl Render for SweepReport {
    fn csv_records(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let header = vec![
            "group",
            "subgroup",
            "parabolic",
            "table_verdict",
            "provenance",
            "criterion",
            "oracle",
            "oracle_counts",
            "agreement",
        ];
        let rows = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.group.clone(),
                    r.subgroup.clone(),
                    r.parabolic.clone(),
                    r.table_verdict.to_string(),
                    r.provenance.clone(),
                    format!("{:?}", r.criterion),
                    opt(&r.oracle),
                    r.oracle_counts
                        .as_ref()
                        .map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                        .unwrap_or_default(),
                    r.agreement.to_string(),
                ]
            })
            .collect();
        (header, rows)
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let _ = write!(
                s,
                "{:<4} {:<22} {:<4} {:<8} {:<20} {}",
                r.group,
                r.subgroup,
                r.parabolic,
                r.table_verdict.to_string(),
                format!("{:?}", r.criterion),
                r.provenance
            );
            if let (Some(o), Some(c)) = (&r.oracle, &r.oracle_counts) {
                let _ = write!(s, " | {o} {c:?}");
            }
            s.push_str(if r.agreement { "\n" } else { "  DISAGREEMENT\n" });
        }
        let _ = writeln!(
            s,
            "{} rows, {} agreements, {} disagreements",
            self.rows.len(),
            self.agreements,
            self.disagreements
        );
        s
    }
}

impl Render for Vec<TableEntry> {
    fn csv_records(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let header = vec!["section", "family", "label", "nodes"];
        let rows = self
            .iter()
            .map(|e| vec![e.section.to_string(), e.family.clone(), e.label.to_string(), format!("{:?}", e.nodes)])
            .collect();
        (header, rows)
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let mut section = "";
        for e in self {
            if e.section != section {
                section = e.section;
                let _ = writeln!(s, "[{section}]");
            }
            let _ = writeln!(s, "  {:<3} {:<12} {}", e.family, format!("{:?}", e.nodes), e.label);
        }
        s
    }
}
