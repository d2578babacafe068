use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polyft::ft::MeshTransform;
use polyft::geometry::{validate_mesh, SurfaceMesh};
use polyft::mesh_io::{
    generate, parse_field_csv, parse_surfacemesh, write_field_csv, write_surfacemesh,
    GeneratorSpec, MeshIoError,
};
use polyft::qfield::{compare_fields, evaluate_field, AxisSpec, Backend, FieldError, QGrid};
use polyft::voxel::{voxelize, VoxelError};

#[derive(Parser)]
#[command(
    name = "polyft",
    version,
    about = "Exact Fourier transforms of polyhedral meshes"
)]
struct Cli {
    /// Worker threads for grid evaluation and voxelization (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GridArgs {
    /// Qx axis as START:STOP:COUNT (inclusive endpoints)
    #[arg(long, default_value = "0:0:1", allow_hyphen_values = true)]
    qx: AxisSpec,
    #[arg(long, default_value = "0:0:1", allow_hyphen_values = true)]
    qy: AxisSpec,
    #[arg(long, default_value = "0:0:1", allow_hyphen_values = true)]
    qz: AxisSpec,
}

impl GridArgs {
    fn grid(&self) -> QGrid {
        QGrid::new(self.qx, self.qy, self.qz)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalyticShape {
    Sphere,
    Prism,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeshShape {
    Cube,
    Prism,
    Icosphere,
    Uvsphere,
}

#[derive(Subcommand)]
enum Command {
    /// Transform of a closed surface mesh over a wave-vector grid
    Transform {
        #[arg(long)]
        mesh: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Closed-form transform of a ball about the origin or a box at the origin
    Analytic {
        #[arg(long, value_enum)]
        shape: AnalyticShape,
        #[arg(long)]
        radius: Option<f64>,
        /// Box edges as a,b,c
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<f64>>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Voxelize a mesh and list the occupied cells
    Voxelize {
        #[arg(long)]
        mesh: PathBuf,
        #[arg(long)]
        pitch: f64,
        #[arg(long)]
        out_occupancy: PathBuf,
    },
    /// Transform of the voxelized mesh
    VoxelTransform {
        #[arg(long)]
        mesh: PathBuf,
        #[arg(long)]
        pitch: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Difference statistics of field A against reference field B
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Write a generated test mesh
    Generate {
        #[arg(long, value_enum)]
        shape: MeshShape,
        /// Cube edge, or box edges as a,b,c
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<f64>>,
        #[arg(long)]
        radius: Option<f64>,
        /// Subdivision level for the spheres
        #[arg(long, default_value_t = 2)]
        subdiv: u32,
        /// Rescale to this enclosed volume
        #[arg(long)]
        match_volume: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a mesh; exits 0 only if it is clean
    Validate {
        #[arg(long)]
        mesh: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Input(String),
    Numeric(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
            Failure::Numeric(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Numeric(m) => f.write_str(m),
        }
    }
}

fn input(context: impl fmt::Display) -> impl FnOnce(MeshIoError) -> Failure {
    move |e| Failure::Input(format!("{context}: {e}"))
}

fn field_failure(e: FieldError) -> Failure {
    match e {
        FieldError::Backend { .. } | FieldError::NonFinite { .. } => {
            Failure::Numeric(e.to_string())
        }
        _ => Failure::Input(e.to_string()),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_mesh(path: &Path) -> Result<SurfaceMesh, Failure> {
    parse_surfacemesh(&read_text(path)?).map_err(input(path.display()))
}

fn mesh_transform(path: &Path) -> Result<MeshTransform, Failure> {
    MeshTransform::new(&read_mesh(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Writes the whole file at once; a partially written file is removed.
fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| {
        let _ = std::fs::remove_file(path);
        Failure::Input(format!("{}: {e}", path.display()))
    })
}

fn field_csv(backend: &Backend<'_>, grid: &GridArgs) -> Result<String, Failure> {
    let field = evaluate_field(backend, &grid.grid()).map_err(field_failure)?;
    Ok(write_field_csv(&field))
}

fn three_dims(dims: &[f64]) -> Result<(f64, f64, f64), Failure> {
    match *dims {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(Failure::Usage(format!(
            "--dims needs three values a,b,c, got {}",
            dims.len()
        ))),
    }
}

fn positive(flag: &str, x: f64) -> Result<(), Failure> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "{flag} must be positive and finite, got {x}"
        )))
    }
}

fn voxel_error(path: &Path, e: VoxelError) -> Failure {
    match e {
        VoxelError::Grazing { .. } => Failure::Numeric(format!("{}: {e}", path.display())),
        VoxelError::InvalidPitch(_) => Failure::Usage(e.to_string()),
        _ => Failure::Input(format!("{}: {e}", path.display())),
    }
}

fn generator_spec(
    shape: MeshShape,
    dims: Option<&[f64]>,
    radius: Option<f64>,
    subdiv: u32,
) -> Result<GeneratorSpec, Failure> {
    Ok(match shape {
        MeshShape::Cube => match dims {
            None => GeneratorSpec::cube(1.0),
            Some([edge]) => GeneratorSpec::cube(*edge),
            Some(d) => {
                return Err(Failure::Usage(format!(
                    "cube takes one edge length, got {}",
                    d.len()
                )))
            }
        },
        MeshShape::Prism => {
            let (a, b, c) =
                three_dims(dims.ok_or(Failure::Usage("prism needs --dims a,b,c".into()))?)?;
            GeneratorSpec::prism(a, b, c)
        }
        MeshShape::Icosphere => GeneratorSpec::icosphere(radius.unwrap_or(1.0), subdiv),
        MeshShape::Uvsphere => GeneratorSpec::uvsphere(radius.unwrap_or(1.0), subdiv),
    })
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Transform { mesh, grid, out } => {
            let transform = mesh_transform(&mesh)?;
            let text = field_csv(&Backend::Mesh(&transform), &grid)
                .map_err(|e| prefix("transform", &mesh, e))?;
            write_output(&out, &text)
        }
        Command::Analytic {
            shape,
            radius,
            dims,
            grid,
            out,
        } => {
            let backend = match shape {
                AnalyticShape::Sphere => {
                    let radius = radius.ok_or(Failure::Usage("sphere needs --radius".into()))?;
                    positive("--radius", radius)?;
                    Backend::Sphere { radius }
                }
                AnalyticShape::Prism => {
                    let (a, b, c) = three_dims(
                        &dims.ok_or(Failure::Usage("prism needs --dims a,b,c".into()))?,
                    )?;
                    for d in [a, b, c] {
                        positive("--dims", d)?;
                    }
                    Backend::Prism { a, b, c }
                }
            };
            let text = field_csv(&backend, &grid)?;
            write_output(&out, &text)
        }
        Command::Voxelize {
            mesh,
            pitch,
            out_occupancy,
        } => {
            let grid = voxelize(&read_mesh(&mesh)?, pitch).map_err(|e| voxel_error(&mesh, e))?;
            write_output(&out_occupancy, &grid.occupancy_text())
        }
        Command::VoxelTransform {
            mesh,
            pitch,
            grid,
            out,
        } => {
            let voxels = voxelize(&read_mesh(&mesh)?, pitch).map_err(|e| voxel_error(&mesh, e))?;
            let text = field_csv(&Backend::Voxel(&voxels), &grid)
                .map_err(|e| prefix("voxel-transform", &mesh, e))?;
            write_output(&out, &text)
        }
        Command::Compare { a, b } => {
            let fa = parse_field_csv(&read_text(&a)?).map_err(input(a.display()))?;
            let fb = parse_field_csv(&read_text(&b)?).map_err(input(b.display()))?;
            let report = compare_fields(&fa, &fb).map_err(field_failure)?;
            println!("{report}");
            Ok(())
        }
        Command::Generate {
            shape,
            dims,
            radius,
            subdiv,
            match_volume,
            out,
        } => {
            let mut spec = generator_spec(shape, dims.as_deref(), radius, subdiv)?;
            spec.volume_match = match_volume;
            let mesh = generate(&spec).map_err(|e| match e {
                MeshIoError::InvalidSpec(_) => Failure::Usage(e.to_string()),
                _ => Failure::Numeric(e.to_string()),
            })?;
            write_output(&out, &write_surfacemesh(&mesh))
        }
        Command::Validate { mesh } => {
            let report = validate_mesh(&read_mesh(&mesh)?);
            println!("{report}");
            if report.is_clean() {
                Ok(())
            } else {
                Err(Failure::Input(format!(
                    "{}: mesh is not clean",
                    mesh.display()
                )))
            }
        }
    }
}

fn prefix(subcommand: &str, mesh: &Path, e: Failure) -> Failure {
    let wrap = |m: String| format!("{subcommand} {}: {m}", mesh.display());
    match e {
        Failure::Usage(m) => Failure::Usage(wrap(m)),
        Failure::Input(m) => Failure::Input(wrap(m)),
        Failure::Numeric(m) => Failure::Numeric(wrap(m)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: could not start worker pool: {e}");
            return ExitCode::from(4);
        }
    };
    match pool.install(|| run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
