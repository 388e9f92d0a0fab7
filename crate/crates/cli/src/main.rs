//! `socode`: groups → designs → orbit matrices → codes → analysis.
//!
//! Exit codes: 0 ok, 1 usage or input error, 2 mathematical precondition
//! failed, 3 table reproduction mismatch.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use socode::construct::{
    from_fixed_split_binary, from_fixed_split_q, from_incidence_binary, from_incidence_q, from_orbitmatrix_binary,
    from_orbitmatrix_q,
};
use socode::design::{from_group_action, stabilizer_orbits, wso_search};
use socode::perm::{format_group, parse_group};
use socode::tables::{self, REPRODUCE_BUDGET};
use socode::{ConstructionReport, Design, Error, Field, GfMatrix, LinearCode, OrbitMatrix, PermGroup, Theorem, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "socode", version, about = "Self-orthogonal codes from weakly self-orthogonal 1-designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Permutation group files.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Designs from group actions.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Orbit matrix of a design under a group of automorphisms.
    Orbitmat {
        design: PathBuf,
        group: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Self-orthogonal codes.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Parameters, duality and weight distribution of a generator matrix.
    Analyze {
        matrix: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Rebuild a table and compare against the stored parameters.
    Reproduce {
        /// One of t1-small, t8, t12, t13, t16-small.
        table: String,
        #[arg(long, default_value_t = REPRODUCE_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Degree, order and orbit profile.
    Info { group: PathBuf },
    /// Point orbits, one per line (0-based).
    Orbits { group: PathBuf },
    /// Induced action on k-subsets.
    Subsets {
        group: PathBuf,
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Action on the right cosets of a subgroup.
    CosetAction {
        group: PathBuf,
        subgroup: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shipped M11 representation of degree 11, 12, 22, 55, 66 or 165.
    M11 {
        degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DesignCmd {
    /// Every union of point-stabilizer orbits whose design is weakly self-orthogonal.
    Search {
        group: PathBuf,
        #[arg(long, default_value_t = 0)]
        point: u32,
        /// Field order; intersections are taken mod its characteristic.
        #[arg(long, default_value_t = 2)]
        q: u64,
    },
    /// Develop the chosen stabilizer orbits into a design.
    Build {
        group: PathBuf,
        /// Comma-separated stabilizer orbit indices, as listed by `--list`.
        #[arg(long, value_delimiter = ',', required_unless_present = "list")]
        orbits: Vec<usize>,
        /// Print the stabilizer orbits and stop.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 0)]
        point: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parameters and intersection profile of a design file.
    Classify {
        design: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: u64,
    },
}

#[derive(Args)]
struct CodeOpts {
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Require this theorem tag; fails if the hypotheses select another.
    #[arg(long)]
    theorem: Option<String>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write the generator matrix here (fixed-split writes `<out>.om1` and `<out>.om2`).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
#[allow(clippy::enum_variant_names)]
enum CodeCmd {
    /// From the incidence matrix.
    FromDesign {
        design: PathBuf,
        #[command(flatten)]
        opts: CodeOpts,
    },
    /// From the orbit matrix under a group of automorphisms.
    FromOrbitmat {
        design: PathBuf,
        group: PathBuf,
        #[command(flatten)]
        opts: CodeOpts,
    },
    /// From the fixed and moved parts of the orbit matrix.
    FromFixedsplit {
        design: PathBuf,
        group: PathBuf,
        /// Moved orbits have length p^alpha.
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        #[command(flatten)]
        opts: CodeOpts,
    },
}

/// Raised when a reproduced table differs from the stored values.
#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "table {} does not reproduce", self.0)
    }
}

impl std::error::Error for Mismatch {}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_group(path: &Path) -> Result<PermGroup> {
    parse_group(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_design(path: &Path) -> Result<Design> {
    Design::parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

/// Writes to `out`, or prints when there is none.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn field(q: u64) -> Result<Field> {
    Ok(Field::with_order(q)?)
}

fn theorem(tag: &Option<String>) -> Result<Option<Theorem>> {
    Ok(tag.as_deref().map(str::parse).transpose()?)
}

fn group_cmd(cmd: GroupCmd) -> Result<()> {
    match cmd {
        GroupCmd::Info { group } => {
            let g = read_group(&group)?;
            println!("degree {}", g.degree());
            println!("order {}", g.order()?);
            println!("transitive {}", g.is_transitive());
            println!("orbit lengths {}", lengths(&g.point_orbits()));
        }
        GroupCmd::Orbits { group } => {
            for orbit in read_group(&group)?.point_orbits() {
                println!("{}", join(&orbit));
            }
        }
        GroupCmd::Subsets { group, k, out } => {
            let induced = read_group(&group)?.action_on_ksubsets(k)?;
            emit(out.as_deref(), &format_group(&induced))?;
        }
        GroupCmd::CosetAction { group, subgroup, out } => {
            let action = read_group(&group)?.coset_action(&read_group(&subgroup)?)?;
            emit(out.as_deref(), &format_group(&action))?;
        }
        GroupCmd::M11 { degree, out } => {
            let Some(g) = socode::data::m11_of_degree(degree)? else {
                bail!("no shipped M11 representation of degree {degree}; use 11, 12, 22, 55, 66 or 165");
            };
            emit(out.as_deref(), &format_group(&g))?;
        }
    }
    Ok(())
}

fn lengths(orbits: &[Vec<u32>]) -> String {
    orbits.iter().map(|o| o.len().to_string()).collect::<Vec<_>>().join(" ")
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn design_cmd(cmd: DesignCmd) -> Result<()> {
    match cmd {
        DesignCmd::Search { group, point, q } => {
            let g = read_group(&group)?;
            let p = field(q)?.characteristic();
            for hit in wso_search(&g, point, p)? {
                let d = &hit.built.design;
                println!(
                    "{} {} b={} orbits={}",
                    hit.case(),
                    d.label(),
                    d.b(),
                    hit.built.orbit_choice.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                );
            }
        }
        DesignCmd::Build { group, orbits, list, point, out } => {
            let g = read_group(&group)?;
            if list {
                for (i, o) in stabilizer_orbits(&g, point)?.iter().enumerate() {
                    println!("{i} size={} points={}", o.len(), join(o));
                }
                return Ok(());
            }
            let built = from_group_action(&g, point, &orbits)?;
            match out {
                Some(path) => {
                    emit(Some(&path), &built.design.to_text())?;
                    println!("{} b={} r-formula={}", built.design.label(), built.design.b(), built.r_formula);
                }
                None => print!("{}", built.design.to_text()),
            }
        }
        DesignCmd::Classify { design, q } => {
            let d = read_design(&design)?;
            let p = field(q)?.characteristic();
            d.validate()?;
            println!("{} b={} {}", d.label(), d.b(), d.intersection_profile(p));
        }
    }
    Ok(())
}

fn print_report(r: &ConstructionReport, budget: u64) {
    print!("{}", r.to_text(budget));
}

fn save(out: Option<&Path>, r: &ConstructionReport) -> Result<()> {
    match out {
        Some(path) => emit(Some(path), &r.code.generator().to_string()),
        None => Ok(()),
    }
}

fn code_cmd(cmd: CodeCmd) -> Result<()> {
    match cmd {
        CodeCmd::FromDesign { design, opts } => {
            let d = read_design(&design)?;
            let forced = theorem(&opts.theorem)?;
            let r = if opts.q == 2 { from_incidence_binary(&d, forced)? } else { from_incidence_q(&d, &field(opts.q)?, forced)? };
            print_report(&r, opts.budget);
            save(opts.out.as_deref(), &r)?;
        }
        CodeCmd::FromOrbitmat { design, group, opts } => {
            let (d, g) = (read_design(&design)?, read_group(&group)?);
            let forced = theorem(&opts.theorem)?;
            let r = if opts.q == 2 {
                from_orbitmatrix_binary(&d, &g, forced)?
            } else {
                from_orbitmatrix_q(&d, &g, &field(opts.q)?, forced)?
            };
            print_report(&r, opts.budget);
            save(opts.out.as_deref(), &r)?;
        }
        CodeCmd::FromFixedsplit { design, group, alpha, opts } => {
            let (d, g) = (read_design(&design)?, read_group(&group)?);
            let forced = theorem(&opts.theorem)?;
            let (r1, r2) = if opts.q == 2 && alpha == 1 {
                from_fixed_split_binary(&d, &g, forced)?
            } else {
                from_fixed_split_q(&d, &g, &field(opts.q)?, alpha, forced)?
            };
            print_report(&r1, opts.budget);
            print_report(&r2, opts.budget);
            if let Some(out) = &opts.out {
                for (suffix, r) in [("om1", &r1), ("om2", &r2)] {
                    let mut path = out.clone().into_os_string();
                    path.push(format!(".{suffix}"));
                    save(Some(Path::new(&path)), r)?;
                }
            }
        }
    }
    Ok(())
}

fn orbitmat_cmd(design: &Path, group: &Path, out: Option<&Path>) -> Result<()> {
    let (d, g) = (read_design(design)?, read_group(group)?);
    let om = OrbitMatrix::build(&d, &g)?;
    om.verify_counting_identity(&d)?;
    emit(out, &om.to_text())
}

fn analyze_cmd(matrix: &Path, budget: u64) -> Result<()> {
    let g = GfMatrix::parse(&read(matrix)?, None).with_context(|| format!("in {}", matrix.display()))?;
    let code = LinearCode::new(g);
    println!("code {}", code.describe(budget));
    println!("self-orthogonal {}", code.is_self_orthogonal());
    println!("self-dual {}", code.is_self_dual());
    let doubly_even = code.doubly_even_generators().map_or("n/a".to_string(), |b| b.to_string());
    println!("doubly-even generators {doubly_even}");
    match code.weight_distribution(budget) {
        Ok(dist) => {
            let parts: Vec<String> = dist.iter().map(|(w, c)| format!("{w}:{c}")).collect();
            println!("weights {}", parts.join(" "));
        }
        Err(Error::BudgetExceeded { .. }) => println!("weights ?"),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn reproduce_cmd(id: &str, budget: u64) -> Result<()> {
    let run = tables::reproduce(id, budget)?;
    for row in &run.rows {
        println!("{row}");
    }
    println!("{} {}", if run.pass() { "PASS" } else { "FAIL" }, run.id);
    if !run.pass() {
        return Err(Mismatch(run.id).into());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Group(cmd) => group_cmd(cmd),
        Command::Design(cmd) => design_cmd(cmd),
        Command::Orbitmat { design, group, out } => orbitmat_cmd(&design, &group, out.as_deref()),
        Command::Code(cmd) => code_cmd(cmd),
        Command::Analyze { matrix, budget } => analyze_cmd(&matrix, budget),
        Command::Reproduce { table, budget } => reproduce_cmd(&table, budget),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Mismatch>().is_some() {
        return 3;
    }
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Parse(_) | Error::UnknownTable(_) | Error::NotPrime(_) | Error::NotPrimePower(_)) | None => 1,
        Some(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
