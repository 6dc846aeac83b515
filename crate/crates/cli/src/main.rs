//! Command-line surface for the feasible-region toolkit.
//!
//! Exit codes: 0 success (and "yes" answers), 1 definite negative answer,
//! 2 usage error, 3 resource cap exceeded, 4 internal failure.

mod output;
mod points;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::BigRational;

use patfeas::analysis::{dimension_probe, feasible_dimension_monotone, ProbeBudget};
use patfeas::colouring::ColouredOverlapGraph;
use patfeas::error::Error;
use patfeas::geometry::{self, cycle_polytope, h_representation, rat_to_string, Key, RatVector};
use patfeas::overlap::OverlapGraph;
use patfeas::perm::{enumerate_avoiders_capped, PatternSet, Permutation, DEFAULT_ENUM_CAP};

use output::{emit, Format};

#[derive(Parser)]
#[command(
    name = "patfeas",
    version,
    about = "Feasible regions for consecutive patterns of pattern-avoiding permutations",
    after_help = "Classes are given either as --avoid <patterns> (comma-separated one-line \
permutations, e.g. 312 or \"3 1 2\") or as --monotone <n> for the class avoiding the \
decreasing pattern n...21. The --monotone form uses the coloured overlap graph, whose \
projected cycle polytope is the exact feasible region of the class."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ClassSpec {
    /// Comma-separated forbidden patterns defining the class Av(B)
    #[arg(long)]
    avoid: Option<String>,
    /// Size n of the forbidden decreasing pattern n...21
    #[arg(long)]
    monotone: Option<usize>,
}

impl ClassSpec {
    fn basis(&self) -> Result<PatternSet, Error> {
        match (&self.avoid, self.monotone) {
            (Some(s), None) => PatternSet::parse(s),
            (None, Some(n)) => {
                if n < 2 {
                    return Err(Error::Precondition(
                        "monotone pattern size must be at least 2".into(),
                    ));
                }
                Ok(PatternSet::monotone_decreasing(n))
            }
            _ => unreachable!("clap enforces exactly one"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List every permutation of a given size in the class
    Enumerate {
        #[command(flatten)]
        class: ClassSpec,
        /// Size of the permutations to list
        #[arg(long)]
        size: usize,
        /// Refuse (exit 3) rather than produce more than this many
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the output to a file (atomically) instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the overlap graph of the class (coloured for --monotone);
    /// --format csv emits the incidence matrix
    Graph {
        #[command(flatten)]
        class: ClassSpec,
        /// Window size
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cycle polytope of the overlap graph; --projected for the feasible
    /// region of a monotone class
    Polytope {
        #[command(flatten)]
        class: ClassSpec,
        #[arg(long)]
        k: usize,
        /// Project the coloured polytope down to plain patterns
        /// (the exact feasible region; --monotone only)
        #[arg(long)]
        projected: bool,
        /// Refuse (exit 3) beyond this many simple cycles
        #[arg(long, default_value_t = geometry::DEFAULT_CYCLE_CAP)]
        cap_cycles: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a point belongs to the polytope (exact; prints YES or
    /// NO, exit code 0 or 1)
    Membership {
        #[command(flatten)]
        class: ClassSpec,
        #[arg(long)]
        k: usize,
        /// Comma-separated rational coordinates, e.g. 0,1/2,1/2,0,0,0
        #[arg(long)]
        point: String,
        /// Test against the projected feasible region (--monotone only)
        #[arg(long)]
        projected: bool,
    },
    /// Maximum limiting density of one pattern over the region
    Pack {
        #[command(flatten)]
        class: ClassSpec,
        #[arg(long)]
        k: usize,
        /// The pattern whose density is maximized
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dimension of the feasible region (exact for monotone and size-three
    /// patterns; certified bounds otherwise)
    Dimension {
        #[command(flatten)]
        class: ClassSpec,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Cycle budget for the probing fallback
        #[arg(long, default_value_t = geometry::DEFAULT_CYCLE_CAP)]
        cap_cycles: usize,
        /// Also write the triangular-minor rank certificate as CSV
        /// (--monotone only)
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Recompute an embedded reference fact and diff against it
    Reproduce {
        /// One of: fig-1, fig-4, fig-6, table-1, matrix-a-3-3, minor-3-3,
        /// matrix-a-4-3, fact-1-10, all
        fact: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::CapExceeded { .. } => ExitCode::from(3),
                Error::Parse(_)
                | Error::Precondition(_)
                | Error::InvalidPermutation(_)
                | Error::DuplicateValues(_)
                | Error::IndexOutOfRange(_) => ExitCode::from(2),
                _ => ExitCode::from(4),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Enumerate {
            class,
            size,
            cap,
            format,
            out,
        } => {
            let basis = class.basis()?;
            let avoiders = enumerate_avoiders_capped(size, &basis, cap)?;
            let rendered = match format {
                Format::Json => {
                    serde_json::Value::Array(
                        avoiders
                            .iter()
                            .map(|p| serde_json::json!(p.values()))
                            .collect(),
                    )
                    .to_string()
                        + "\n"
                }
                _ => {
                    let mut s = String::new();
                    for p in &avoiders {
                        s.push_str(&p.to_string());
                        s.push('\n');
                    }
                    s
                }
            };
            emit(&rendered, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Graph {
            class,
            k,
            format,
            out,
        } => {
            let rendered = match (class.monotone, format) {
                (Some(n), Format::Dot) => ColouredOverlapGraph::build(n, k)?.graph.to_dot(),
                (Some(n), Format::Csv) => {
                    let g = ColouredOverlapGraph::build(n, k)?;
                    geometry::incidence_matrix(&g.graph)?.to_csv()
                }
                (Some(n), _) => {
                    let g = ColouredOverlapGraph::build(n, k)?;
                    output::coloured_graph_json(&g.graph).to_string() + "\n"
                }
                (None, Format::Dot) => OverlapGraph::build(k, &class.basis()?)?.graph.to_dot(),
                (None, Format::Csv) => {
                    let g = OverlapGraph::build(k, &class.basis()?)?;
                    geometry::incidence_matrix(&g.graph)?.to_csv()
                }
                (None, _) => {
                    let g = OverlapGraph::build(k, &class.basis()?)?;
                    output::plain_graph_json(&g.graph).to_string() + "\n"
                }
            };
            emit(&rendered, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Polytope {
            class,
            k,
            projected,
            cap_cycles,
            format,
            out,
        } => {
            if projected && class.monotone.is_none() {
                return Err(Error::Precondition(
                    "--projected applies to --monotone classes".into(),
                ));
            }
            let value = match class.monotone {
                Some(n) => {
                    let cog = ColouredOverlapGraph::build(n, k)?;
                    let vp = cycle_polytope(&cog.graph, cap_cycles)?;
                    if projected {
                        let mut proj = geometry::project_polytope(&vp)?;
                        proj.filter_to_extreme()?;
                        // Facets of the projected region are not certified,
                        // so only the vertex form is emitted.
                        serde_json::json!({
                            "class": format!("Av({})", compact(&Permutation::decreasing(n))),
                            "k": k.to_string(),
                            "region": "projected-feasible-region",
                            "vertex_form": proj.to_json(),
                        })
                    } else {
                        let h = h_representation(&cog.graph)?;
                        serde_json::json!({
                            "class": format!("Av({})", compact(&Permutation::decreasing(n))),
                            "k": k.to_string(),
                            "region": "coloured-cycle-polytope",
                            "vertex_form": vp.to_json(),
                            "constraint_form": h.to_json(),
                        })
                    }
                }
                None => {
                    let basis = class.basis()?;
                    let og = OverlapGraph::build(k, &basis)?;
                    let vp = cycle_polytope(&og.graph, cap_cycles)?;
                    let h = h_representation(&og.graph)?;
                    serde_json::json!({
                        "class": format!("Av({basis})"),
                        "k": k.to_string(),
                        "region": "cycle-polytope",
                        "vertex_form": vp.to_json(),
                        "constraint_form": h.to_json(),
                    })
                }
            };
            let rendered = match format {
                Format::Text => output::polytope_summary(&value),
                _ => value.to_string() + "\n",
            };
            emit(&rendered, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Membership {
            class,
            k,
            point,
            projected,
        } => {
            if projected && class.monotone.is_none() {
                return Err(Error::Precondition(
                    "--projected applies to --monotone classes".into(),
                ));
            }
            let inside = match class.monotone {
                Some(n) => {
                    let cog = ColouredOverlapGraph::build(n, k)?;
                    if projected {
                        let point = points::parse_plain_point(
                            &point,
                            k,
                            &points::projected_space(&cog)?,
                        )?;
                        geometry::membership_in_projection(&cog.graph, &point)?
                    } else {
                        let space = geometry::edge_label_set(&cog.graph)?;
                        let point = points::parse_point_in_space(&point, &space)?;
                        let h = h_representation(&cog.graph)?;
                        geometry::membership(&h, &point)?
                    }
                }
                None => {
                    let og = OverlapGraph::build(k, &class.basis()?)?;
                    let space = geometry::edge_label_set(&og.graph)?;
                    let point = points::parse_plain_point(&point, k, &space)?;
                    let h = h_representation(&og.graph)?;
                    geometry::membership(&h, &point)?
                }
            };
            if inside {
                println!("YES");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("NO");
                Ok(ExitCode::from(1))
            }
        }

        Command::Pack {
            class,
            k,
            pattern,
            format,
        } => {
            let pattern = Permutation::parse(&pattern)?;
            if pattern.size() != k {
                return Err(Error::Precondition(format!(
                    "pattern size {} does not match window size {k}",
                    pattern.size()
                )));
            }
            let (value, region, exact) = pack_value(&class, k, &pattern)?;
            if !exact {
                eprintln!(
                    "note: value is the cycle-polytope optimum, an upper bound for this class"
                );
            }
            let rendered = match format {
                Format::Json => {
                    serde_json::json!({
                        "pattern": compact(&pattern),
                        "value": rat_to_string(&value),
                        "region": region,
                        "exact": exact,
                    })
                    .to_string()
                        + "\n"
                }
                _ => format!("{}\n", rat_to_string(&value)),
            };
            emit(&rendered, None)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Dimension {
            class,
            k,
            format,
            cap_cycles,
            certificate,
        } => {
            if let Some(path) = &certificate {
                let Some(n) = class.monotone else {
                    return Err(Error::Precondition(
                        "--certificate applies to --monotone classes".into(),
                    ));
                };
                let cert = patfeas::analysis::triangular_minor_certificate(n, k)?;
                emit(&cert.to_csv(), Some(path))?;
            }
            let report = match class.monotone {
                Some(n) => feasible_dimension_monotone(n, k)?,
                None => {
                    let basis = class.basis()?;
                    if basis.patterns().len() == 1 {
                        let budget = ProbeBudget {
                            max_cycles: cap_cycles,
                            ..ProbeBudget::default()
                        };
                        dimension_probe(&basis.patterns()[0], k, &budget)?
                    } else {
                        multi_pattern_dimension(&basis, k, cap_cycles)?
                    }
                }
            };
            let rendered = match format {
                Format::Json => report.to_json().to_string() + "\n",
                _ => match report.dimension {
                    Some(d) => format!("{d}\n"),
                    None => format!(
                        "between {} and {} (inconclusive)\n",
                        report.lower_bound, report.upper_bound
                    ),
                },
            };
            emit(&rendered, None)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Reproduce { fact } => reproduce::run(&fact),
    }
}

fn compact(p: &Permutation) -> String {
    if p.size() <= 9 {
        p.values().iter().map(|v| v.to_string()).collect()
    } else {
        p.to_string()
    }
}

/// Packing optimum with exactness bookkeeping. Monotone classes go through
/// the projected region; size-three patterns are exact on the plain cycle
/// polytope; anything else is an upper bound.
fn pack_value(
    class: &ClassSpec,
    k: usize,
    pattern: &Permutation,
) -> Result<(BigRational, &'static str, bool), Error> {
    if let Some(n) = class.monotone {
        let cog = ColouredOverlapGraph::build(n, k)?;
        let (value, _) = geometry::maximize_pattern_over_projection(&cog.graph, pattern)?;
        return Ok((value, "projected-feasible-region", true));
    }
    let basis = class.basis()?;
    if basis.patterns().len() == 1 {
        let tau = &basis.patterns()[0];
        if *tau == Permutation::decreasing(tau.size()) {
            // same machinery as --monotone
            let cog = ColouredOverlapGraph::build(tau.size(), k)?;
            let (value, _) = geometry::maximize_pattern_over_projection(&cog.graph, pattern)?;
            return Ok((value, "projected-feasible-region", true));
        }
        if *tau == Permutation::identity(tau.size()) {
            // increasing avoidance: the complement maps the class onto the
            // decreasing case and relabels window patterns
            let cog = ColouredOverlapGraph::build(tau.size(), k)?;
            let (value, _) =
                geometry::maximize_pattern_over_projection(&cog.graph, &pattern.complement())?;
            return Ok((value, "projected-feasible-region", true));
        }
    }
    let og = OverlapGraph::build(k, &basis)?;
    let h = h_representation(&og.graph)?;
    let mut objective = RatVector::zero(h.labels().clone());
    if objective.get(&Key::Plain(pattern.clone())).is_some() {
        objective.set(&Key::Plain(pattern.clone()), num::One::one())?;
    }
    let (value, _) = geometry::maximize_over(&h, &objective)?;
    let exact = basis.patterns().len() == 1 && {
        let tau = &basis.patterns()[0];
        [
            tau.clone(),
            tau.reverse(),
            tau.complement(),
            tau.reverse().complement(),
        ]
        .contains(&Permutation::new(vec![3, 1, 2])?)
    };
    Ok((value, "cycle-polytope", exact))
}

/// The |B| >= 2 cases: the intersection of the monotone size-three classes
/// leaves only the two monotone permutations, a zero-dimensional region;
/// anything else gets the cycle-polytope dimension as an upper-bound
/// statistic, flagged inconclusive.
fn multi_pattern_dimension(
    basis: &PatternSet,
    k: usize,
    cap_cycles: usize,
) -> Result<patfeas::analysis::DimensionReport, Error> {
    use patfeas::analysis::{DimensionMethod, DimensionReport};
    let monotone_intersection = PatternSet::parse("132,213,231,312")?;
    if *basis == monotone_intersection {
        return Ok(DimensionReport {
            class: format!("Av({basis})"),
            k,
            upper_bound: 0,
            lower_bound: 0,
            dimension: Some(0),
            method: DimensionMethod::CyclePolytope,
            conclusive: true,
            certificates: vec![
                "the class holds only the two monotone permutations".into(),
                "the region is two isolated points, each of dimension zero".into(),
            ],
        });
    }
    let og = OverlapGraph::build(k, basis)?;
    let (count, dim) = geometry::cycle_space_affine_dimension(&og.graph, cap_cycles)?;
    Ok(DimensionReport {
        class: format!("Av({basis})"),
        k,
        upper_bound: dim,
        lower_bound: 0,
        dimension: None,
        method: DimensionMethod::CyclePolytope,
        conclusive: false,
        certificates: vec![format!(
            "cycle polytope over {count} simple cycles has affine dimension {dim}; \
             for multiple forbidden patterns only the upper bound is certified"
        )],
    })
}
