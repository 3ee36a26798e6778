//! `tpg`: compute transversal probabilities and run catalog scans.
//!
//! Groups are given as a catalog id (`a5`, `d07`, ...) or as a builder
//! expression (`"sdp (cyclic 7) (cyclic 3) power 2"`). Subgroups are given
//! by generators (`1,4`) or by position in `tpg group subgroups` (`@3`).
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
//! cap.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use tpgroup::arith::{factorial_ratio, gamma_bound_ln, prodpi_collision_scan, prop_097, COLLISION_MAX_SUM};
use tpgroup::catalog::{scan_and_report, Builder, Catalog, ScanOptions};
use tpgroup::coset_graph::build_coset_graph;
use tpgroup::group::{classify_structure, subgroup_generated, write_cayley_table, Lattice, SUBGROUP_CAP};
use tpgroup::rational::{self, BigRational, RationalJson};
use tpgroup::tp::{tp_with, TpOptions};
use tpgroup::transversal::{bounds_report, oracle_agreement, p_g_full};
use tpgroup::{Error, Exec, GroupTable, Subgroup};

#[derive(Parser)]
#[command(name = "tpg", version, about = "Exact common transversal probabilities of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Clone)]
struct Global {
    /// Refuse groups (and skip catalog entries) above this order.
    #[arg(long, global = true, default_value_t = SUBGROUP_CAP)]
    cap_order: usize,
    /// Worker threads for catalog entries.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Recompute everything and leave the results cache untouched.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Results cache file.
    #[arg(long, global = true, default_value = ".tpg-cache.ndjson")]
    cache: PathBuf,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Catalog file; the builtin catalog when absent.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build, describe or list the subgroups of a group.
    Group {
        #[command(subcommand)]
        action: GroupCmd,
    },
    /// P_G(H, K) for subgroups of equal index.
    Pg {
        group: String,
        #[arg(long)]
        h: String,
        /// Defaults to H.
        #[arg(long)]
        k: Option<String>,
        /// Include the bound comparison.
        #[arg(long)]
        bounds: bool,
        /// Cross-check with the permanent and enumeration oracles.
        #[arg(long)]
        oracles: bool,
    },
    /// tp(G) with witnesses and the per-class table.
    Tp { group: String },
    /// The coset intersection graph of H and K.
    Graph {
        group: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: Option<String>,
        /// Graphviz output instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Run every check on one catalog entry.
    Verify {
        id: String,
        /// Comma-separated check ids; all when absent.
        #[arg(long)]
        checks: Option<String>,
    },
    /// Run checks over the whole catalog.
    Scan {
        #[arg(long)]
        checks: Option<String>,
    },
    /// Number-theoretic scans.
    Nt {
        #[command(subcommand)]
        action: NtCmd,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Print the Cayley table.
    Make { group: String },
    /// Order, structure and element statistics.
    Show { group: String },
    /// All subgroups in canonical order.
    Subgroups { group: String },
}

#[derive(Subcommand)]
enum NtCmd {
    /// Look for multisets whose factorial-ratio products collide with a
    /// product over distinct primes.
    Prodpi {
        #[arg(long, default_value_t = 28)]
        max_sum: u64,
    },
    /// Compare the bounds on P for index n and s double cosets.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        s: u64,
    },
}

/// A failure with its exit code.
enum Fail {
    Verify(String),
    Usage(String),
    Cap(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        if e.is_size_limit() {
            return Fail::Cap(e.to_string());
        }
        match e {
            Error::Invariant(_) => Fail::Verify(e.to_string()),
            Error::Entry { ref source, .. } if matches!(**source, Error::Invariant(_)) => Fail::Verify(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

type Out = Result<(), Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Fail::Verify(m) => (1, m),
                Fail::Usage(m) => (2, m),
                Fail::Cap(m) => (3, m),
            };
            eprintln!("tpg: {msg}");
            ExitCode::from(code)
        }
    }
}

impl Global {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        }
    }

    fn catalog(&self) -> Result<Catalog, Fail> {
        Ok(match &self.catalog {
            Some(p) => Catalog::from_path(p)?,
            None => Catalog::builtin(),
        })
    }

    /// A catalog id or a builder expression, checked against the order cap.
    fn group(&self, spec: &str) -> Result<GroupTable, Fail> {
        let catalog = self.catalog()?;
        let g = match catalog.get(spec) {
            Some(e) => {
                if let Some(n) = e.known_order().filter(|&n| n > self.cap_order) {
                    return Err(over_cap(n, self.cap_order));
                }
                e.build()?
            }
            None => {
                let b: Builder = spec.parse()?;
                if let Some(n) = b.predicted_order().filter(|&n| n > self.cap_order) {
                    return Err(over_cap(n, self.cap_order));
                }
                b.build(Path::new("."))?
            }
        };
        if g.order() > self.cap_order {
            return Err(over_cap(g.order(), self.cap_order));
        }
        Ok(g)
    }

    fn tp_options(&self) -> TpOptions {
        TpOptions {
            exec: self.exec(),
            subgroup_cap: self.cap_order,
            keep_table: true,
        }
    }

    fn emit(&self, json: &impl Serialize, csv: impl FnOnce() -> String) -> Out {
        let text = match self.format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(json)?),
            Format::Csv => csv(),
        };
        match &self.report {
            Some(p) => std::fs::write(p, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }
}

fn over_cap(n: usize, cap: usize) -> Fail {
    Fail::Cap(format!("group of order {n} exceeds --cap-order {cap}"))
}

fn subgroup(g: &GroupTable, spec: &str, cap: usize) -> Result<Subgroup, Fail> {
    if let Some(i) = spec.strip_prefix('@') {
        let i: usize = i.parse().map_err(|_| Fail::Usage(format!("bad subgroup position `{spec}`")))?;
        let lat = Lattice::with_cap(g, cap)?;
        if i >= lat.len() {
            return Err(Fail::Usage(format!("{spec}: the group has {} subgroups", lat.len())));
        }
        return Ok(lat.get(i).clone());
    }
    let mut gens = Vec::new();
    for x in spec.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let x: usize = x.parse().map_err(|_| Fail::Usage(format!("bad element `{x}`")))?;
        if x >= g.order() {
            return Err(Fail::Usage(format!("element {x} out of range for order {}", g.order())));
        }
        gens.push(x);
    }
    Ok(subgroup_generated(g, &gens))
}

fn pair(g: &GroupTable, h: &str, k: Option<&str>, cap: usize) -> Result<(Subgroup, Subgroup), Fail> {
    let hs = subgroup(g, h, cap)?;
    let ks = match k {
        Some(k) => subgroup(g, k, cap)?,
        None => hs.clone(),
    };
    if hs.order() != ks.order() {
        return Err(Fail::Usage(format!("|H| = {} and |K| = {} differ", hs.order(), ks.order())));
    }
    Ok((hs, ks))
}

fn checks_opt(checks: Option<&str>, base: ScanOptions) -> Result<ScanOptions, Fail> {
    Ok(match checks {
        Some(c) => base.with_checks(c.split(',').map(str::trim).filter(|c| !c.is_empty()))?,
        None => base,
    })
}

fn run(cli: Cli) -> Out {
    let gl = &cli.global;
    match &cli.command {
        Command::Group { action } => match action {
            GroupCmd::Make { group } => {
                let text = write_cayley_table(&gl.group(group)?);
                match &gl.report {
                    Some(p) => std::fs::write(p, text)?,
                    None => print!("{text}"),
                }
                Ok(())
            }
            GroupCmd::Show { group } => {
                let g = gl.group(group)?;
                let s = classify_structure(&g)?;
                let mut hist = std::collections::BTreeMap::new();
                for o in g.element_orders() {
                    *hist.entry(o).or_insert(0usize) += 1;
                }
                let j = json!({
                    "group": g.provenance().to_string(),
                    "order": g.order(),
                    "structure": s,
                    "element_orders": hist,
                });
                gl.emit(&j, || {
                    let rows: String = hist.iter().map(|(o, c)| format!("{o},{c}\n")).collect();
                    format!("element_order,count\n{rows}")
                })
            }
            GroupCmd::Subgroups { group } => {
                let g = gl.group(group)?;
                let lat = Lattice::with_cap(&g, gl.cap_order)?;
                let rows: Vec<_> = (0..lat.len())
                    .map(|i| {
                        let h = lat.get(i);
                        json!({
                            "position": i,
                            "order": h.order(),
                            "index": h.index(),
                            "normal": lat.is_normal(i),
                            "class": lat.class_of(i),
                            "generators": h.generators(),
                        })
                    })
                    .collect();
                gl.emit(&rows, || {
                    let mut out = String::from("position,order,index,normal,class,generators\n");
                    for i in 0..lat.len() {
                        let h = lat.get(i);
                        let gens: Vec<String> = h.generators().iter().map(|x| x.to_string()).collect();
                        out.push_str(&format!(
                            "{i},{},{},{},{},\"{}\"\n",
                            h.order(),
                            h.index(),
                            lat.is_normal(i),
                            lat.class_of(i),
                            gens.join(" ")
                        ));
                    }
                    out
                })
            }
        },
        Command::Pg {
            group,
            h,
            k,
            bounds,
            oracles,
        } => {
            let g = gl.group(group)?;
            let (hs, ks) = pair(&g, h, k.as_deref(), gl.cap_order)?;
            let r = p_g_full(&g, &hs, &ks)?;
            let t = r.graph.t_vector();
            let mut j = json!({
                "p": RationalJson::from(&r.p),
                "p_display": rational::display(&r.p),
                "n": r.graph.n(),
                "s": r.graph.s(),
                "m": r.graph.m(),
                "t_vector": t.entries(),
            });
            if *bounds {
                j["bounds"] = serde_json::to_value(bounds_report(&g, &hs, &ks)?)?;
            }
            if *oracles {
                let o = oracle_agreement(&g, &hs, &ks, gl.exec())?;
                j["oracles"] = json!({
                    "permanent": RationalJson::from(&o.from_permanent),
                    "enumeration": o.from_enumeration.as_ref().map(RationalJson::from),
                    "agree": o.agree(),
                });
            }
            gl.emit(&j, || {
                let ts: Vec<String> = t.entries().iter().map(|x| x.to_string()).collect();
                format!(
                    "p_num,p_den,n,s,m,t_vector\n{},{},{},{},{},\"{}\"\n",
                    r.p.numer(),
                    r.p.denom(),
                    r.graph.n(),
                    r.graph.s(),
                    r.graph.m(),
                    ts.join(" ")
                )
            })
        }
        Command::Tp { group } => {
            let g = gl.group(group)?;
            let r = tp_with(&g, &gl.tp_options())?;
            gl.emit(&r, || {
                let mut out = String::from("subgroup,class_size,order,index,normal,p_num,p_den,t_vector\n");
                for row in &r.table {
                    let ts: Vec<String> = row.t_vector.iter().map(|x| x.to_string()).collect();
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},\"{}\"\n",
                        row.subgroup,
                        row.class_size,
                        row.order,
                        row.index,
                        row.normal,
                        row.p.numer(),
                        row.p.denom(),
                        ts.join(" ")
                    ));
                }
                out
            })
        }
        Command::Graph { group, h, k, dot } => {
            let g = gl.group(group)?;
            let (hs, ks) = pair(&g, h, k.as_deref(), gl.cap_order)?;
            let graph = build_coset_graph(&g, &hs, &ks)?;
            if *dot {
                let text = graph.to_dot();
                match &gl.report {
                    Some(p) => std::fs::write(p, text)?,
                    None => print!("{text}"),
                }
                return Ok(());
            }
            let j = json!({
                "n": graph.n(),
                "s": graph.s(),
                "m": graph.m(),
                "left_reps": graph.left_reps(),
                "right_reps": graph.right_reps(),
                "components": graph.components(),
            });
            gl.emit(&j, || {
                let mut out = String::from("component,t,weight,double_coset_rep\n");
                for (i, c) in graph.components().iter().enumerate() {
                    out.push_str(&format!("{i},{},{},{}\n", c.t, c.weight, c.double_coset_rep));
                }
                out
            })
        }
        Command::Verify { id, checks } => {
            let catalog = gl.catalog()?;
            let entry = catalog
                .get(id)
                .ok_or_else(|| Fail::Usage(format!("no catalog entry `{id}`")))?
                .clone();
            let single = Catalog::from_entries(vec![entry]);
            scan(gl, &single, checks.as_deref(), false)
        }
        Command::Scan { checks } => scan(gl, &gl.catalog()?, checks.as_deref(), !gl.no_cache),
        Command::Nt { action } => match action {
            NtCmd::Prodpi { max_sum } => {
                if *max_sum > COLLISION_MAX_SUM {
                    return Err(Fail::Cap(format!("--max-sum {max_sum} exceeds {COLLISION_MAX_SUM}")));
                }
                let r = prodpi_collision_scan(*max_sum)?;
                let ok = r.holds();
                gl.emit(&r, || {
                    let mut out = String::from("value_num,value_den,multisets\n");
                    for c in &r.collisions {
                        let sets: Vec<String> = c
                            .multisets
                            .iter()
                            .map(|m| m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                            .collect();
                        out.push_str(&format!("{},{},\"{}\"\n", c.value.num, c.value.den, sets.join("; ")));
                    }
                    out
                })?;
                if ok {
                    Ok(())
                } else {
                    Err(Fail::Verify("a prime product collides with another multiset".into()))
                }
            }
            NtCmd::Bounds { n, s } => nt_bounds(gl, *n, *s),
        },
    }
}

fn scan(gl: &Global, catalog: &Catalog, checks: Option<&str>, use_cache: bool) -> Out {
    let opts = checks_opt(
        checks,
        ScanOptions {
            cap_order: gl.cap_order,
            jobs: gl.jobs,
            exec: gl.exec(),
            cache: use_cache.then(|| gl.cache.clone()),
            ..Default::default()
        },
    )?;
    let outcome = scan_and_report(catalog, &opts, None)?;
    let r = &outcome.report;
    let text = match gl.format {
        Format::Json => r.to_json()?,
        Format::Csv => r.to_csv(),
    };
    match &gl.report {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    let c = outcome.cache;
    eprintln!(
        "{} entries, {} skipped, {} verdicts, {} inconsistent, {} mismatched; cache: {} hits, {} stale, {} corrupt",
        r.summary.entries,
        r.summary.skipped,
        r.summary.verdicts,
        r.summary.inconsistent,
        r.summary.mismatched,
        c.hits,
        c.stale,
        c.corrupt
    );
    if r.passed() {
        Ok(())
    } else {
        Err(Fail::Verify(format!("failed entries: {}", r.summary.failed.join(", "))))
    }
}

#[derive(Serialize)]
struct BoundRow {
    bound: &'static str,
    /// Exact value when it is rational.
    exact: Option<RationalJson>,
    ln: f64,
}

fn exact_row(bound: &'static str, v: BigRational) -> BoundRow {
    BoundRow {
        bound,
        ln: rational::ln(&v),
        exact: Some(RationalJson::from(&v)),
    }
}

/// The general lower bound, the AM-GM and gamma upper bounds, the
/// `c^n` refinement and the `(7/8)^n` bound for given `n` and `s`.
fn nt_bounds(gl: &Global, n: u64, s: u64) -> Out {
    if n == 0 || s == 0 || s > n {
        return Err(Fail::Usage(format!("need 1 <= s <= n, got n = {n}, s = {s}")));
    }
    let mut rows = vec![
        exact_row("n!/n^n", factorial_ratio(n)?),
        exact_row(
            "((n+s)/2n)^n",
            rational::pow(&BigRational::new((n + s).into(), (2 * n).into()), n),
        ),
        BoundRow {
            bound: "f(n/s)^s",
            exact: None,
            ln: gamma_bound_ln(n, s)?,
        },
    ];
    let p = prop_097(n, s)?;
    rows.push(BoundRow {
        bound: "c^n ((n+s)/2n)^n",
        exact: None,
        ln: p.ln_rhs,
    });
    if 4 * s <= 3 * n {
        rows.push(exact_row("(7/8)^n", rational::pow(&rational::ratio(7, 8), n)));
    }
    let j = json!({
        "n": n,
        "s": s,
        "rows": rows,
        "gamma_below_refinement": p.holds,
    });
    gl.emit(&j, || {
        let mut out = String::from("bound,ln_value,exact\n");
        for r in &rows {
            let exact = r.exact.as_ref().map(|e| format!("{}/{}", e.num, e.den)).unwrap_or_default();
            out.push_str(&format!("{},{},{}\n", r.bound, r.ln, exact));
        }
        out
    })
}
