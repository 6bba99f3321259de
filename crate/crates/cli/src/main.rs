use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use ratnc::config12::{enumerate_x, from_config12, to_config12};
use ratnc::membership::{Condition, Violation};
use ratnc::parking::{characters_tsv, verify_characters, Mode, DEFAULT_PARK_CAP};
use ratnc::partitions::enumerate_pairs;
use ratnc::paths::{enumerate_capped, DEFAULT_PATH_CAP};
use ratnc::sieving::{count_fixed, count_fixed_orbits, orbit_count_from_sequences, verify_csp, Flavor};
use ratnc::{is_member, CoprimePair, DyckPath, LabeledPair, Permutation, Verdict};

mod render;

#[derive(Parser)]
#[command(name = "ratnc", version, about = "Rational (a,b)-noncrossing partitions")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List NC(A,B) in path order.
    Enumerate {
        a: u32,
        b: u32,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Draw a path with its labels and lasers, followed by its pair.
    Show {
        a: u32,
        b: u32,
        /// Run vector, e.g. 3,0,2,3,0,1,1.
        #[arg(long)]
        path: String,
        #[arg(long, value_enum, default_value_t = Render::Ascii)]
        render: Render,
    },
    /// Decide membership of a pair given as JSON.
    Member {
        a: u32,
        b: u32,
        #[arg(long)]
        pair: String,
    },
    /// Rotation orbit of a pair (with reflections when --dihedral).
    Orbit {
        a: u32,
        b: u32,
        #[arg(long)]
        pair: String,
        #[arg(long)]
        dihedral: bool,
    },
    /// Number of pairs fixed by rot^D: closed form and brute force.
    Fixed {
        a: u32,
        b: u32,
        d: u32,
        /// Count only pairs with this many fixed orbits of blocks.
        #[arg(long)]
        orbits: Option<u32>,
        /// With --orbits: require a central block.
        #[arg(long, requires = "orbits")]
        central: bool,
    },
    /// Cyclic sieving table over every rotation power.
    Csp {
        a: u32,
        b: u32,
        #[arg(long, conflicts_with = "kreweras")]
        narayana: Option<u32>,
        /// Rank profile r_1,...,r_A.
        #[arg(long)]
        kreweras: Option<String>,
    },
    /// Parking function characters.
    Park {
        a: u32,
        b: u32,
        /// Permutation W (one-line or cycle notation) and rotation power D.
        #[arg(long = "char", num_args = 2, value_names = ["W", "D"], conflicts_with = "verify", required_unless_present = "verify")]
        char_: Option<Vec<String>>,
        /// Sweep every (w, d).
        #[arg(long)]
        verify: bool,
    },
    /// The (N+1,N) paths next to their (1,2)-configurations.
    Config12 { n: u32 },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Render {
    Ascii,
    Svg,
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] ratnc::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(ratnc::Error::ResourceLimit { .. }) => 3,
            _ => 2,
        }
    }
}

/// Text to emit and whether a verification inside it failed.
struct Report {
    text: String,
    mismatch: bool,
}

impl From<String> for Report {
    fn from(text: String) -> Self {
        Report { text, mismatch: false }
    }
}

fn coprime(a: u32, b: u32) -> Result<CoprimePair, Failure> {
    CoprimePair::new(a, b).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_list(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Failure::Usage(format!("bad list entry {x:?} in {s:?}"))))
        .collect()
}

fn read_pair(pair: CoprimePair, json: &str) -> Result<LabeledPair, Failure> {
    let pq = LabeledPair::from_json(json).map_err(|e| Failure::Usage(format!("bad pair JSON: {e}")))?;
    if pq.pair() != pair {
        return Err(Failure::Usage(format!(
            "pair JSON is for ({},{}), not ({},{})",
            pq.pair().a(),
            pq.pair().b(),
            pair.a(),
            pair.b()
        )));
    }
    Ok(pq)
}

fn describe(v: &Violation) -> String {
    let what = match v.condition {
        Condition::RankSum => "ranks do not sum to a",
        Condition::QRank => "a Q-block has rank >= a/b",
        Condition::Kreweras => "Q is not the Kreweras complement of a noncrossing P",
        Condition::RankCondition => "rank condition fails",
    };
    let mut s = format!("condition={} ({what})", v.condition as u8);
    if let Some(m) = v.rotation {
        s += &format!(" rotation={m}");
    }
    if let Some(b) = &v.block {
        s += &format!(" block={b}");
    }
    if let Some(r) = &v.report {
        s += &format!(" achieved={} bounds=[{},{}]", r.achieved, r.lower, r.upper);
    }
    s
}

fn run(cmd: Command) -> Result<Report, Failure> {
    Ok(match cmd {
        Command::Enumerate { a, b, format, limit } => {
            let pair = coprime(a, b)?;
            let mut pairs = enumerate_pairs(pair, DEFAULT_PATH_CAP)?;
            pairs.truncate(limit.unwrap_or(usize::MAX));
            let mut out = String::new();
            match format {
                Format::Jsonl => {
                    for pq in &pairs {
                        out += &pq.to_json();
                        out.push('\n');
                    }
                }
                Format::Tsv => {
                    out += "runs\tP\tQ\n";
                    let side = |blocks: &[ratnc::Block]| {
                        blocks
                            .iter()
                            .map(|b| format!("{}:{}", render::join(b.elems()), b.rank()))
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    for pq in &pairs {
                        let runs = pq.to_path()?;
                        out += &format!("{}\t{}\t{}\n", render::join(runs.runs()), side(pq.p()), side(pq.q()));
                    }
                }
            }
            out.into()
        }
        Command::Show { a, b, path, render } => {
            let pair = coprime(a, b)?;
            let d = DyckPath::new(pair, parse_list(&path)?).map_err(|e| Failure::Usage(format!("bad path: {e}")))?;
            let pq = LabeledPair::from_path(&d);
            match render {
                Render::Ascii => format!("{}{}\n", render::ascii(&d), pq.to_json()).into(),
                Render::Svg => render::svg(&d, &pq).into(),
            }
        }
        Command::Member { a, b, pair } => {
            let pq = read_pair(coprime(a, b)?, &pair)?;
            match is_member(&pq) {
                Verdict::Member(d) => format!("verdict=member path={}\n", render::join(d.runs())),
                Verdict::NonMember(v) => format!("verdict=non-member {}\n", describe(&v)),
            }
            .into()
        }
        Command::Orbit { a, b, pair, dihedral } => {
            let pq = read_pair(coprime(a, b)?, &pair)?;
            if !is_member(&pq).is_member() {
                return Err(ratnc::Error::NotMember { a, b }.into());
            }
            let mut seen = Vec::new();
            let mut starts = vec![pq.clone()];
            if dihedral {
                starts.push(pq.reflected());
            }
            for s in starts {
                for k in 0..b as i64 - 1 {
                    let r = s.rotated(k);
                    if !seen.contains(&r) {
                        seen.push(r);
                    }
                }
            }
            let mut out = String::new();
            for r in &seen {
                out += &r.to_json();
                out.push('\n');
            }
            out.into()
        }
        Command::Fixed { a, b, d, orbits, central } => {
            let pair = coprime(a, b)?;
            let (c, extra) = match orbits {
                None => (count_fixed(pair, d)?, String::new()),
                Some(p) => (
                    count_fixed_orbits(pair, d, p, central)?,
                    format!(" sequences={}", orbit_count_from_sequences(pair, d, p, central)?),
                ),
            };
            Report {
                text: format!("formula={} brute={} match={}{extra}\n", c.formula, c.brute, c.matches()),
                mismatch: !c.matches(),
            }
        }
        Command::Csp { a, b, narayana, kreweras } => {
            let pair = coprime(a, b)?;
            let flavor = match (narayana, kreweras) {
                (Some(k), _) => Flavor::Narayana(k),
                (None, Some(r)) => {
                    let r = parse_list(&r)?;
                    if r.len() != a as usize {
                        return Err(Failure::Usage(format!("--kreweras needs {a} entries")));
                    }
                    Flavor::Kreweras(r)
                }
                (None, None) => Flavor::Catalan,
            };
            let report = verify_csp(pair, &flavor, DEFAULT_PATH_CAP)?;
            Report {
                text: report.to_tsv(),
                mismatch: !report.passed(),
            }
        }
        Command::Park { a, b, char_, verify } => {
            let pair = coprime(a, b)?;
            if verify {
                let rows = verify_characters(pair, DEFAULT_PARK_CAP)?;
                Report {
                    text: characters_tsv(&rows),
                    mismatch: rows.iter().any(|r| !r.matches()),
                }
            } else {
                let args = char_.expect("clap requires --char without --verify");
                let w = Permutation::parse(&args[0], a).map_err(|e| Failure::Usage(e.to_string()))?;
                let d: u64 = args[1].parse().map_err(|_| Failure::Usage(format!("bad rotation power {:?}", args[1])))?;
                let formula = ratnc::parking::character(&w, d, pair, Mode::Formula)?;
                let brute = ratnc::parking::character(&w, d, pair, Mode::Brute)?;
                Report {
                    text: format!("formula={formula} brute={brute} match={}\n", formula == brute),
                    mismatch: formula != brute,
                }
            }
        }
        Command::Config12 { n } => {
            let pair = CoprimePair::new(n + 1, n).map_err(|e| Failure::Usage(e.to_string()))?;
            let paths = enumerate_capped(pair, DEFAULT_PATH_CAP)?;
            let mut out = String::from("runs\tconfiguration\tballs\tarcs\n");
            let mut mismatch = false;
            let mut image = Vec::with_capacity(paths.len());
            for d in &paths {
                let c = to_config12(d)?;
                mismatch |= from_config12(&c)? != *d;
                let arcs: Vec<String> = c.arcs().iter().map(|(i, j)| format!("{i}-{j}")).collect();
                out += &format!("{}\t{c}\t{}\t{}\n", render::join(d.runs()), render::join(c.balls()), arcs.join(","));
                image.push(c);
            }
            image.sort();
            image.dedup();
            let mut expected = enumerate_x(n)?;
            expected.sort();
            mismatch |= image != expected;
            Report { text: out, mismatch }
        }
    })
}

fn threads() -> Result<usize, Failure> {
    match std::env::var("THREADS") {
        Ok(s) => s
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Usage(format!("THREADS must be a positive integer, got {s:?}"))),
        Err(_) => Ok(1),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = threads().and_then(|n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
        run(cli.command)
    });
    match result {
        Ok(report) => {
            if let Err(e) = emit(&cli.out, &report.text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.mismatch {
                eprintln!("verification mismatch");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
