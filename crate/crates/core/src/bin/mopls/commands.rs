use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use mopls::codes::{check_code_equivalence, metrics, to_code};
use mopls::construct::{k_mopls_diagonal, k_ols, min_mopls, min_mpls};
use mopls::format::{self, Format};
use mopls::graphview::complement;
use mopls::maximality::{is_maximal, maximalize, Maximality, MaximalizePolicy};
use mopls::search::{min_maximal, verify_bound_exhaustive, SearchOptions};
use mopls::verify::{
    bound_region, check_lemma2, lower_bound, verify_bound, verify_hr_structure, verify_min_structure, Region,
    StructureReport,
};
use mopls::{Error, KPartialSquare, Result};
use serde_json::{json, Value};

use crate::cli::{Code, Construct, Export, GraphFormat, OutputArgs, Search, SquareFormat, Verify};

/// What a command produced: a verdict, two renderings of its report, and the
/// files it read and wrote.
pub struct Outcome {
    pub ok: bool,
    pub text: String,
    pub record: Value,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
}

impl Outcome {
    fn new(ok: bool, text: String, record: Value) -> Self {
        Outcome {
            ok,
            text,
            record,
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    fn reading(mut self, path: &Path) -> Self {
        self.inputs.push(path.to_path_buf());
        self
    }
}

pub fn read_square(path: &Path) -> Result<KPartialSquare> {
    format::parse(&std::fs::read_to_string(path)?)
}

fn square_format(output: &OutputArgs, path: &Path) -> Format {
    match output.format {
        Some(SquareFormat::Grid) => Format::Grid,
        Some(SquareFormat::Json) => Format::Json,
        None if path.extension().is_some_and(|e| e == "json") => Format::Json,
        None => Format::Grid,
    }
}

/// Writes the square if `--out` was given, otherwise puts it in the text
/// report.
fn emit_square(square: &KPartialSquare, output: &OutputArgs, outcome: &mut Outcome) -> Result<()> {
    match &output.out {
        Some(path) => {
            std::fs::write(path, format::serialize(square, square_format(output, path))?)?;
            outcome.outputs.push(path.clone());
            let _ = writeln!(outcome.text, "wrote {}", path.display());
        }
        None => {
            let fmt = match output.format {
                Some(SquareFormat::Json) => Format::Json,
                _ if square.order() > format::MAX_GRID_ORDER => Format::Json,
                _ => Format::Grid,
            };
            outcome.text.push_str(&format::serialize(square, fmt)?);
            outcome.record["square"] = serde_json::to_value(format::SquareRecord::from_square(square))?;
        }
    }
    Ok(())
}

fn constructed(square: KPartialSquare, output: &OutputArgs) -> Result<Outcome> {
    let (n, k, filled) = (square.order(), square.layers(), square.filled_count());
    let maximal = is_maximal(&square).is_maximal();
    let mut out = Outcome::new(
        true,
        format!("order {n}, {k} layer(s), {filled} filled cells, maximal: {maximal}\n"),
        json!({ "n": n, "k": k, "filled": filled, "maximal": maximal }),
    );
    emit_square(&square, output, &mut out)?;
    Ok(out)
}

pub fn construct(cmd: &Construct) -> Result<Outcome> {
    match cmd {
        Construct::MinMopls { n, output } => constructed(min_mopls(*n)?, output),
        Construct::MinMpls { n, output } => constructed(min_mpls(*n)?, output),
        Construct::KMopls { n, k, blocks, output } => constructed(k_mopls_diagonal(*n, *k, blocks)?, output),
        Construct::KOls { n, k, output } => constructed(k_ols(*k, *n)?.into_square(), output),
        Construct::RandomMaximal { n, k, seed, output } => constructed(
            maximalize(&KPartialSquare::new(*n, *k)?, MaximalizePolicy::Random { seed: *seed }),
            output,
        ),
    }
}

fn structure_outcome(report: StructureReport) -> Result<Outcome> {
    let mut text = format!(
        "block orders {:?} (expected {:?}): {}\n",
        report.block_orders,
        report.expected_orders,
        if report.ok { "ok" } else { "FAILED" }
    );
    for w in &report.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    for f in &report.failures {
        let _ = writeln!(text, "failure: {f}");
    }
    Ok(Outcome::new(report.ok, text, serde_json::to_value(&report)?))
}

pub fn verify(cmd: &Verify) -> Result<Outcome> {
    match cmd {
        Verify::Maximal { file } => {
            let sq = read_square(file)?;
            let out = match is_maximal(&sq) {
                Maximality::Maximal => Outcome::new(
                    true,
                    format!("maximal ({} filled cells)\n", sq.filled_count()),
                    json!({ "maximal": true, "filled": sq.filled_count() }),
                ),
                Maximality::Extendable(w) => Outcome::new(
                    false,
                    format!(
                        "not maximal: cell {} accepts {:?}\n",
                        w.cell,
                        w.tuple.iter().map(|&s| s + 1).collect::<Vec<_>>()
                    ),
                    json!({ "maximal": false, "filled": sq.filled_count(), "witness": w }),
                ),
            };
            Ok(out.reading(file))
        }
        Verify::Bound { file } => {
            let r = verify_bound(&read_square(file)?)?;
            let text = format!(
                "F = {}, m = {} ({:?} {}), d = {}, t = {}, rhs = {}, lower bound = {}\nbound holds: {}, tight: {}, transversal lemma: {}\n",
                r.filled, r.m, r.family, r.element, r.d, r.t, r.rhs, r.lower_bound, r.holds, r.tight, r.lemma2_ok
            );
            Ok(Outcome::new(r.holds && r.lemma2_ok, text, serde_json::to_value(&r)?).reading(file))
        }
        Verify::Structure { file } => Ok(structure_outcome(verify_min_structure(&read_square(file)?)?)?.reading(file)),
        Verify::Hr { file } => Ok(structure_outcome(verify_hr_structure(&read_square(file)?)?)?.reading(file)),
        Verify::Lemma2 { file, rows, cols } => {
            let sq = read_square(file)?;
            let (view, region) = match (rows, cols) {
                (Some(r), Some(c)) => (sq, Region::new(r.clone(), c.clone())),
                _ => {
                    if sq.layers() != 2 {
                        return Err(Error::Hypothesis(
                            "the default region needs an orthogonal pair; pass --rows and --cols".into(),
                        ));
                    }
                    let b = bound_region(&sq)?;
                    (b.view, b.region)
                }
            };
            let r = check_lemma2(&view, &region)?;
            let text = format!(
                "d = {}, t = {}, empty residual cells: {}, frequency shortfalls: {}, certificate: {}\n",
                r.d,
                r.t,
                r.empty_residual_cells.len(),
                r.shortfalls.len(),
                r.certificate_ok
            );
            Ok(Outcome::new(r.ok, text, json!({ "region": region, "report": r })).reading(file))
        }
    }
}

pub fn search(cmd: &Search) -> Result<Outcome> {
    match cmd {
        Search::Min {
            n,
            k,
            budget,
            resume,
            no_symmetry,
            output,
        } => {
            let opts = SearchOptions {
                budget: *budget,
                symmetry: !no_symmetry,
            };
            let r = min_maximal(*n, *k, opts, resume.as_deref())?;
            let mut text = String::new();
            match (r.min_f, r.exhaustive) {
                (Some(f), true) => {
                    let _ = writeln!(text, "minimum maximal size for n = {n}, k = {k}: {f}");
                }
                (Some(f), false) => {
                    let _ = writeln!(
                        text,
                        "budget exhausted: {} <= minimum <= {f} (upper bound only)",
                        r.proven_lower
                    );
                }
                (None, _) => {
                    let _ = writeln!(text, "budget exhausted: minimum >= {}", r.proven_lower);
                }
            }
            let _ = writeln!(text, "nodes explored: {}", r.nodes_explored);
            for l in &r.levels {
                let _ = writeln!(
                    text,
                    "  F = {:>3}: {:>9} squares, {:>6} maximal",
                    l.filled, l.squares, l.maximal
                );
            }
            let mut out = Outcome::new(r.exhaustive, text, serde_json::to_value(&r)?);
            if let Some(w) = &r.witness {
                out.record["witness"] = serde_json::to_value(format::SquareRecord::from_square(w))?;
                if output.out.is_some() {
                    emit_square(w, output, &mut out)?;
                } else {
                    out.text.push_str(&format::serialize(w, Format::Grid)?);
                }
            }
            if let Some(path) = resume {
                out.outputs.push(path.clone());
            }
            Ok(out)
        }
        Search::Bound { n, budget } => {
            let r = verify_bound_exhaustive(*n, *budget)?;
            let mut text = format!(
                "n = {n}: lower bound {}, smallest maximal size {:?}, exhaustive: {}\n",
                r.lower_bound, r.min_f, r.exhaustive
            );
            for (f, count) in &r.maximal_by_filled {
                let _ = writeln!(text, "  F = {f:>3}: {count} maximal classes");
            }
            let _ = writeln!(
                text,
                "below bound: {}, unbalanced at the bound: {}, graph disagreements: {}",
                r.below_bound.len(),
                r.unbalanced_tight.len(),
                r.clique_disagreements.len()
            );
            Ok(Outcome::new(r.ok && r.exhaustive, text, serde_json::to_value(&r)?))
        }
    }
}

pub fn code(cmd: &Code) -> Result<Outcome> {
    match cmd {
        Code::Analyze { file } => {
            let sq = read_square(file)?;
            let m = metrics(&to_code(&sq))?;
            let mut text = format!(
                "words: {}, length: {}, alphabet: {}, minimum distance: {}, covering radius: {}\n",
                m.size,
                m.length,
                m.alphabet_size,
                m.min_distance.map_or("undefined".to_string(), |d| d.to_string()),
                m.covering_radius
            );
            if m.has_ternary_hamming_parameters() {
                text.push_str("parameters match the ternary Hamming code (length 4, distance 3, radius 1)\n");
            }
            let mut record = json!({ "metrics": m });
            let mut ok = true;
            if sq.layers() != 2 || sq.order() > 3 {
                let eq = check_code_equivalence(&sq)?;
                let _ = writeln!(
                    text,
                    "maximal: {}, code criterion: {}, consistent: {}",
                    eq.maximal, eq.code_criterion, eq.holds
                );
                ok = eq.holds;
                record["equivalence"] = serde_json::to_value(&eq)?;
            }
            Ok(Outcome::new(ok, text, record).reading(file))
        }
        Code::Export { file, out } => {
            let code = to_code(&read_square(file)?);
            let words = code.export();
            let mut outcome = Outcome::new(true, String::new(), json!({ "words": code.len() })).reading(file);
            match out {
                Some(path) => {
                    std::fs::write(path, &words)?;
                    outcome.outputs.push(path.clone());
                    outcome.text = format!("wrote {} words to {}\n", code.len(), path.display());
                }
                None => outcome.text = words,
            }
            Ok(outcome)
        }
    }
}

pub fn export(cmd: &Export) -> Result<Outcome> {
    match cmd {
        Export::Graph { file, format, out } => {
            let sq = read_square(file)?;
            let g = complement(&sq);
            let body = match format {
                GraphFormat::EdgeList => g.to_edge_list(),
                GraphFormat::Dot => g.to_dot(),
            };
            let record = json!({
                "n": sq.order(),
                "parts": g.parts(),
                "edges": g.edge_count(),
                "densities": g.densities(),
                "lower_bound": lower_bound(sq.order()),
            });
            let mut outcome = Outcome::new(true, String::new(), record).reading(file);
            match out {
                Some(path) => {
                    std::fs::write(path, &body)?;
                    outcome.outputs.push(path.clone());
                    outcome.text = format!("wrote {} edges to {}\n", g.edge_count(), path.display());
                }
                None => outcome.text = body,
            }
            Ok(outcome)
        }
    }
}
