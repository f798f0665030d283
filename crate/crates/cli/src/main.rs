//! `pcm`: verification and classification of paracontact metric structures
//! presented in a moving frame.

use clap::{Parser, Subcommand};

use paracontact_cli::commands::{self, Outcome};

#[derive(Parser, Debug)]
#[command(name = "pcm")]
#[command(about = "Exact verification and classification of paracontact metric structures")]
#[command(version)]
#[command(after_help = "EXAMPLES:
    pcm catalog r3 --emit r3.pcm        Write the built-in R^3 example
    pcm validate r3.pcm                 Check every structure axiom exactly
    pcm infer r3.pcm                    Infer the nullity constants (kappa, mu)
    pcm nullity r3.pcm --kappa -1 --mu 2
    pcm deform r3.pcm --c 2 --verify    Deform and re-derive the mu law
    pcm rank r3.pcm --point \"0,5,7\"
    pcm canonical r3.pcm --point \"1,0,0\"")]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the structure axioms as exact polynomial identities
    Validate { file: String },

    /// Print the h-tensor, its generic rank, and the K-paracontact flag
    H { file: String },

    /// Verify the nullity condition for given constants
    Nullity {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },

    /// Infer the nullity constants from the curvature
    Infer { file: String },

    /// Apply a D_c-homothetic deformation
    Deform {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Recompute curvature from scratch and check the mu law
        #[arg(long)]
        verify: bool,
        /// Write the deformed structure to a file
        #[arg(long)]
        emit: Option<String>,
    },

    /// Rank stratification of h, with optional rank at a point
    Rank {
        file: String,
        #[arg(long)]
        point: Option<String>,
    },

    /// Canonical basis of the tangent space at a point
    Canonical {
        file: String,
        #[arg(long)]
        point: Option<String>,
        /// Numeric tolerance (default 1e-9)
        #[arg(long)]
        tol: Option<f64>,
    },

    /// Print or emit a built-in example: r3, mu0, or lie:n=2,m=1
    Catalog {
        name: String,
        #[arg(long)]
        emit: Option<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    let outcome: Outcome = match &cli.command {
        Command::Validate { file } => commands::validate(file),
        Command::H { file } => commands::h_tensor(file),
        Command::Nullity { file, kappa, mu } => commands::nullity(file, kappa, mu),
        Command::Infer { file } => commands::infer(file),
        Command::Deform {
            file,
            c,
            verify,
            emit,
        } => commands::deform(file, c, *verify, emit.as_deref()),
        Command::Rank { file, point } => commands::rank(file, point.as_deref()),
        Command::Canonical { file, point, tol } => {
            commands::canonical(file, point.as_deref(), *tol)
        }
        Command::Catalog { name, emit } => commands::catalog_cmd(name, emit.as_deref()),
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&outcome.json).unwrap());
    } else {
        print!("{}", outcome.text);
    }
    std::process::exit(outcome.exit);
}
