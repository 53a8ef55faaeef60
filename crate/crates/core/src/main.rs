use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use shellrec::corpus::{
    catalog, enumerate_closed, exceptional_scan, theorem1_scan, EnumerationConfig, SurfaceFilter,
    CATALOG_NAMES,
};
use shellrec::{
    classify_shell, extend_map, find_intersection_preserving_maps, intersection_matrix, is_shell,
    reconstruct_from_matrix, repetition_pattern, shell_around_vertex, structural_vertex_list,
    validate_surface, Error, ExtendReport, IntersectionMatrix, ReconstructOptions,
    TriangleBijection, Triangulation, TriangulationFile, VertexId,
};

#[derive(Parser)]
#[command(
    name = "shellrec",
    version,
    about = "Triangulated surfaces and their intersection matrices"
)]
struct Cli {
    /// Write the JSON report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for enumeration and scans.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Surface checks: counts, closedness, Euler characteristic, orientability.
    Validate { input: PathBuf },
    /// Intersection matrix in file triangle order.
    Matrix {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: MatrixFormat,
    },
    /// Intersection-preserving triangle bijections from LEFT to RIGHT.
    Maps {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Extend a triangle bijection to a vertex isomorphism, or certify an exceptional surface.
    Extend {
        #[arg(long)]
        map: PathBuf,
        left: PathBuf,
        right: PathBuf,
    },
    /// Classify the shell formed by the file's triangles, or the star of one vertex.
    Classify {
        input: PathBuf,
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Rebuild a triangulation from a JSON or CSV intersection matrix.
    Reconstruct {
        input: PathBuf,
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// List catalog names, or print one entry.
    Catalog { name: Option<String> },
    /// Closed surfaces up to a vertex bound.
    Enumerate {
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value = "all")]
        filter: SurfaceFilter,
    },
    /// Check that equal matrices imply isomorphic surfaces over the enumerated corpus.
    ScanTheorem1 {
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value = "all")]
        filter: SurfaceFilter,
    },
    /// Find every surface with a non-induced intersection-preserving map.
    ScanExceptional {
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value = "all")]
        filter: SurfaceFilter,
    },
}

enum Failure {
    /// Unreadable or malformed input; exit code 2.
    Input(String),
    /// The library rejected well-formed input; exit code 1.
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn json_error(path: &Path, e: serde_json::Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

fn load_triangulation(path: &Path) -> Result<Triangulation, Failure> {
    let text = read(path)?;
    let file: TriangulationFile = serde_json::from_str(&text).map_err(|e| json_error(path, e))?;
    file.into_triangulation()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<IntersectionMatrix, Failure> {
    let text = read(path)?;
    let is_csv = path
        .extension()
        .is_some_and(|x| x.eq_ignore_ascii_case("csv"));
    let parsed = if is_csv {
        IntersectionMatrix::from_csv(&text)
    } else {
        let file = serde_json::from_str(&text).map_err(|e| json_error(path, e))?;
        IntersectionMatrix::from_file(file)
    };
    parsed.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_map(path: &Path, n: usize) -> Result<TriangleBijection, Failure> {
    let text = read(path)?;
    let f: TriangleBijection = serde_json::from_str(&text).map_err(|e| json_error(path, e))?;
    f.check_bijective(n)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(f)
}

fn config(max_vertices: usize, filter: SurfaceFilter) -> Result<EnumerationConfig, Failure> {
    let config = EnumerationConfig {
        max_vertices,
        surface_filter: filter,
        require_closed: true,
    };
    config
        .validate()
        .map_err(|e| Failure::Input(e.to_string()))?;
    Ok(config)
}

fn labels(s: &Triangulation, vs: &[Option<VertexId>]) -> Vec<Option<String>> {
    vs.iter()
        .map(|v| v.map(|v| s.label(v).to_string()))
        .collect()
}

fn to_value<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn run(command: Command) -> Result<String, Failure> {
    let report = match command {
        Command::Validate { input } => to_value(&validate_surface(&load_triangulation(&input)?)),
        Command::Matrix { input, format } => {
            let m = intersection_matrix(&load_triangulation(&input)?);
            return Ok(match format {
                MatrixFormat::Json => pretty(&to_value(&m.to_file())),
                MatrixFormat::Csv => m.to_csv(),
            });
        }
        Command::Maps { left, right, limit } => {
            let (s, s2) = (load_triangulation(&left)?, load_triangulation(&right)?);
            let maps = find_intersection_preserving_maps(&s, &s2, limit);
            json!({ "count": maps.len(), "limit": limit, "maps": maps })
        }
        Command::Extend { map, left, right } => {
            let (s, s2) = (load_triangulation(&left)?, load_triangulation(&right)?);
            let f = load_map(&map, s2.len())?;
            let result = extend_map(&f, &s, &s2)?;
            to_value(&ExtendReport::new(&result, &s, &s2))
        }
        Command::Classify { input, vertex } => {
            let s = load_triangulation(&input)?;
            let shell = match vertex {
                Some(label) => shell_around_vertex(&s, s.vertex(&label)?)?,
                None => is_shell(&s, &(0..s.len()).collect::<Vec<_>>()).ok_or_else(|| {
                    Error::InvalidShell("the triangles do not form a shell in file order".into())
                })?,
            };
            let class = classify_shell(&s, &shell)?;
            let svl = structural_vertex_list(&s, &shell);
            let windows = if shell.len() >= 4 {
                repetition_pattern(&svl).ok()
            } else {
                None
            };
            json!({
                "class": class.to_string(),
                "n": shell.len(),
                "open": shell.open,
                "triangles": shell.triangles,
                "a": labels(&s, &svl.a),
                "b": labels(&s, &svl.b),
                "windows": windows,
            })
        }
        Command::Reconstruct { input, node_budget } => {
            let m = load_matrix(&input)?;
            let mut opts = ReconstructOptions::default();
            if let Some(b) = node_budget {
                opts.node_budget = b;
            }
            let r = reconstruct_from_matrix(&m, opts)?;
            json!({
                "triangles": TriangulationFile::from(&r.triangulation).triangles,
                "ambiguous_boundary": r.ambiguous_boundary,
                "alternative": r.alternative.as_ref().map(|t| TriangulationFile::from(t).triangles),
                "exhaustive": r.exhaustive,
            })
        }
        Command::Catalog { name: None } => json!({ "names": CATALOG_NAMES }),
        Command::Catalog { name: Some(name) } => to_value(&catalog(&name)?),
        Command::Enumerate {
            max_vertices,
            filter,
        } => {
            let config = config(max_vertices, filter)?;
            let all = enumerate_closed(&config)?;
            eprintln!("enumerated {} surfaces", all.len());
            let files: Vec<_> = all
                .iter()
                .map(|t| TriangulationFile::from(t).triangles)
                .collect();
            json!({
                "max_vertices": max_vertices,
                "filter": filter,
                "count": files.len(),
                "triangulations": files,
            })
        }
        Command::ScanTheorem1 {
            max_vertices,
            filter,
        } => {
            let report = theorem1_scan(&config(max_vertices, filter)?)?;
            eprintln!(
                "{} surfaces, {} groups, {} violations",
                report.corpus_size,
                report.groups.len(),
                report.violations.len()
            );
            to_value(&report)
        }
        Command::ScanExceptional {
            max_vertices,
            filter,
        } => {
            let report = exceptional_scan(&config(max_vertices, filter)?)?;
            eprintln!(
                "{} surfaces, {} with non-induced maps",
                report.corpus_size,
                report.members.len()
            );
            to_value(&report)
        }
    };
    Ok(pretty(&report))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("warning: --jobs ignored: {e}");
        }
    }
    let outcome = run(cli.command).and_then(|text| match &cli.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: malformed input: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
