//! Textual input format: a small block key-value grammar describing the
//! ring, the module, an optional reduction submodule, and run settings.
//!
//! ```text
//! # comment
//! ring {
//!   field = zmod 32003        # or: field = q
//!   vars = x y z
//!   degrees = 1 1 1           # optional, defaults to all 1
//! }
//! module {
//!   kind = direct_sum_of_ideals
//!   ideal = x^2, x*y
//!   ideal = y, z
//! }
//! submodule_U = 1 2           # optional, 1-based generator indices
//! config {                    # optional
//!   seed = 42
//!   r_max = 6
//!   degree_cap = 30
//!   time_cap_seconds = 300
//!   bourbaki_mode = random    # or: symbolic
//! }
//! ```
//!
//! The presentation form replaces the ideal lines with the rows of the
//! relation matrix and the generator degrees:
//!
//! ```text
//! module {
//!   kind = presentation
//!   twists = 2 1
//!   row = -y, x^2
//!   row = x, 0
//! }
//! ```

use crate::bourbaki::BourbakiMode;
use crate::config::{Budget, Config};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groebner::Ideal;
use crate::matrix::PolyMatrix;
use crate::modlib::PresentedModule;
use crate::order::MonomialOrder;
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use std::path::Path;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub enum ModuleSpec {
    DirectSumOfIdeals(Vec<Ideal>),
    Presentation { phi: PolyMatrix, twists: Vec<i64> },
}

#[derive(Debug, Clone)]
pub struct InputSpec {
    pub ring: Arc<PolyRing>,
    pub module: ModuleSpec,
    /// Zero-based generator indices of the reduction submodule U.
    pub submodule_u: Option<Vec<usize>>,
    pub config: Config,
    pub bourbaki_mode: BourbakiMode,
}

impl InputSpec {
    /// Materialize the presented module; the direct-sum form needs a
    /// syzygy computation, hence the budget.
    pub fn build_module(&self, budget: &Budget) -> Result<PresentedModule> {
        match &self.module {
            ModuleSpec::DirectSumOfIdeals(ideals) => {
                PresentedModule::direct_sum_of_ideals(&self.ring, ideals, budget)
            }
            ModuleSpec::Presentation { phi, twists } => {
                PresentedModule::new(phi.clone(), twists.clone())
            }
        }
    }
}

fn input_err(line: usize, msg: &str) -> Error {
    Error::Input(format!("line {line}: {msg}"))
}

/// One `key = value` pair with its source line, grouped under a block name.
struct Entry {
    line: usize,
    key: String,
    value: String,
}

struct Block {
    line: usize,
    name: String,
    entries: Vec<Entry>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn lex_blocks(text: &str) -> Result<(Vec<Block>, Vec<Entry>)> {
    let mut blocks = vec![];
    let mut top = vec![];
    let mut current: Option<Block> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_suffix('{') {
            if current.is_some() {
                return Err(input_err(lineno, "blocks cannot nest"));
            }
            let name = name.trim();
            if name.is_empty() {
                return Err(input_err(lineno, "block needs a name before `{`"));
            }
            current = Some(Block {
                line: lineno,
                name: name.to_string(),
                entries: vec![],
            });
            continue;
        }
        if line == "}" {
            match current.take() {
                Some(b) => blocks.push(b),
                None => return Err(input_err(lineno, "unmatched `}`")),
            }
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(input_err(lineno, "expected `key = value`"));
        };
        let entry = Entry {
            line: lineno,
            key: key.trim().to_string(),
            value: value.trim().to_string(),
        };
        match &mut current {
            Some(b) => b.entries.push(entry),
            None => top.push(entry),
        }
    }
    if let Some(b) = current {
        return Err(input_err(b.line, &format!("block `{}` is never closed", b.name)));
    }
    Ok((blocks, top))
}

fn single<'a>(entries: &'a [Entry], key: &str) -> Result<Option<&'a Entry>> {
    let hits: Vec<&Entry> = entries.iter().filter(|e| e.key == key).collect();
    match hits.len() {
        0 => Ok(None),
        1 => Ok(Some(hits[0])),
        _ => Err(input_err(hits[1].line, &format!("duplicate key `{key}`"))),
    }
}

fn require<'a>(entries: &'a [Entry], key: &str, block_line: usize) -> Result<&'a Entry> {
    single(entries, key)?
        .ok_or_else(|| input_err(block_line, &format!("missing key `{key}`")))
}

fn parse_field(e: &Entry) -> Result<FieldSpec> {
    let v = e.value.to_lowercase();
    if v == "q" || v == "rationals" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = v.strip_prefix("zmod") {
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| input_err(e.line, "expected `zmod <prime>`"))?;
        let spec = FieldSpec::PrimeField(p);
        spec.validate()
            .map_err(|m| input_err(e.line, &m))?;
        return Ok(spec);
    }
    Err(input_err(e.line, "field must be `q` or `zmod <prime>`"))
}

fn parse_ring(block: &Block) -> Result<Arc<PolyRing>> {
    let field = match single(&block.entries, "field")? {
        Some(e) => parse_field(e)?,
        None => FieldSpec::default_prime(),
    };
    let vars_entry = require(&block.entries, "vars", block.line)?;
    let vars: Vec<String> = vars_entry
        .value
        .split_whitespace()
        .map(|s| s.to_string())
        .collect();
    if vars.is_empty() {
        return Err(input_err(vars_entry.line, "vars list is empty"));
    }
    let degrees = match single(&block.entries, "degrees")? {
        Some(e) => {
            let ds: Vec<u32> = e
                .value
                .split_whitespace()
                .map(|s| s.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| input_err(e.line, "degrees must be nonnegative integers"))?;
            if ds.len() != vars.len() {
                return Err(input_err(e.line, "degrees count must match vars count"));
            }
            ds
        }
        None => vec![1; vars.len()],
    };
    PolyRing::new(field, vars, degrees, MonomialOrder::GrevLex)
}

fn parse_poly_list(ring: &Arc<PolyRing>, e: &Entry) -> Result<Vec<Polynomial>> {
    e.value
        .split(',')
        .map(|s| {
            parse_polynomial(ring, s.trim())
                .map_err(|err| input_err(e.line, &err.to_string()))
        })
        .collect()
}

fn parse_module(block: &Block, ring: &Arc<PolyRing>) -> Result<ModuleSpec> {
    let kind = require(&block.entries, "kind", block.line)?;
    match kind.value.as_str() {
        "direct_sum_of_ideals" => {
            let mut ideals = vec![];
            for e in block.entries.iter().filter(|e| e.key == "ideal") {
                let gens = parse_poly_list(ring, e)?;
                ideals.push(
                    Ideal::new(ring, gens)
                        .map_err(|err| input_err(e.line, &err.to_string()))?,
                );
            }
            if ideals.is_empty() {
                return Err(input_err(block.line, "need at least one `ideal = ...` line"));
            }
            Ok(ModuleSpec::DirectSumOfIdeals(ideals))
        }
        "presentation" => {
            let twists_entry = require(&block.entries, "twists", block.line)?;
            let twists: Vec<i64> = twists_entry
                .value
                .split_whitespace()
                .map(|s| s.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| input_err(twists_entry.line, "twists must be integers"))?;
            let mut rows = vec![];
            for e in block.entries.iter().filter(|e| e.key == "row") {
                rows.push((e.line, parse_poly_list(ring, e)?));
            }
            // no row lines at all presents the free module
            if !rows.is_empty() && rows.len() != twists.len() {
                return Err(input_err(
                    block.line,
                    "number of `row` lines must match the twists count",
                ));
            }
            let rows = if rows.is_empty() {
                twists.iter().map(|_| (block.line, vec![])).collect()
            } else {
                rows
            };
            let cols = rows.first().map_or(0, |(_, r)| r.len());
            for (line, r) in &rows {
                if r.len() != cols {
                    return Err(input_err(*line, "rows must all have the same length"));
                }
            }
            let mut phi = PolyMatrix::zero(ring, rows.len(), cols);
            for (i, (_, r)) in rows.into_iter().enumerate() {
                for (j, p) in r.into_iter().enumerate() {
                    *phi.at_mut(i, j) = p;
                }
            }
            Ok(ModuleSpec::Presentation { phi, twists })
        }
        other => Err(input_err(
            kind.line,
            &format!("unknown module kind `{other}`"),
        )),
    }
}

fn parse_config(block: Option<&Block>) -> Result<(Config, BourbakiMode)> {
    let mut config = Config::default();
    let mut mode = BourbakiMode::Random;
    let Some(block) = block else {
        return Ok((config, mode));
    };
    for e in &block.entries {
        match e.key.as_str() {
            "seed" => {
                config.seed = e
                    .value
                    .parse()
                    .map_err(|_| input_err(e.line, "seed must be a nonnegative integer"))?;
            }
            "r_max" => {
                config.r_max = Some(
                    e.value
                        .parse()
                        .map_err(|_| input_err(e.line, "r_max must be a nonnegative integer"))?,
                );
            }
            "degree_cap" => {
                config.budget.degree_cap = e
                    .value
                    .parse()
                    .map_err(|_| input_err(e.line, "degree_cap must be a positive integer"))?;
            }
            "time_cap_seconds" => {
                config.budget.time_cap_seconds = e
                    .value
                    .parse()
                    .map_err(|_| input_err(e.line, "time_cap_seconds must be an integer"))?;
            }
            "bourbaki_mode" => {
                mode = match e.value.as_str() {
                    "random" => BourbakiMode::Random,
                    "symbolic" => BourbakiMode::Symbolic,
                    _ => {
                        return Err(input_err(
                            e.line,
                            "bourbaki_mode must be `random` or `symbolic`",
                        ))
                    }
                };
            }
            other => return Err(input_err(e.line, &format!("unknown config key `{other}`"))),
        }
    }
    Ok((config, mode))
}

pub fn parse_input(text: &str) -> Result<InputSpec> {
    let (blocks, top) = lex_blocks(text)?;
    for b in &blocks {
        if !matches!(b.name.as_str(), "ring" | "module" | "config") {
            return Err(input_err(b.line, &format!("unknown block `{}`", b.name)));
        }
    }
    let find = |name: &str| blocks.iter().filter(|b| b.name == name).collect::<Vec<_>>();
    let ring_blocks = find("ring");
    let module_blocks = find("module");
    if ring_blocks.len() != 1 {
        return Err(Error::Input("input needs exactly one ring block".into()));
    }
    if module_blocks.len() != 1 {
        return Err(Error::Input("input needs exactly one module block".into()));
    }
    let config_blocks = find("config");
    if config_blocks.len() > 1 {
        return Err(Error::Input("at most one config block".into()));
    }
    let ring = parse_ring(ring_blocks[0])?;
    let module = parse_module(module_blocks[0], &ring)?;
    let (config, bourbaki_mode) = parse_config(config_blocks.first().copied())?;
    let mut submodule_u: Option<Vec<usize>> = None;
    for e in &top {
        if e.key == "submodule_U" {
            if submodule_u.is_some() {
                return Err(input_err(e.line, "duplicate submodule_U"));
            }
            let idx: Vec<usize> = e
                .value
                .split_whitespace()
                .map(|s| s.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| input_err(e.line, "submodule_U wants 1-based indices"))?;
            if idx.iter().any(|&i| i == 0) {
                return Err(input_err(e.line, "submodule_U indices are 1-based"));
            }
            submodule_u = Some(idx.iter().map(|&i| i - 1).collect());
        } else {
            return Err(input_err(e.line, &format!("unknown key `{}`", e.key)));
        }
    }
    let n_gens = match &module {
        ModuleSpec::DirectSumOfIdeals(ideals) => ideals.iter().map(|i| i.gens.len()).sum(),
        ModuleSpec::Presentation { twists, .. } => twists.len(),
    };
    if let Some(u) = &submodule_u {
        if u.iter().any(|&i| i >= n_gens) {
            return Err(Error::Input(format!(
                "submodule_U index exceeds the generator count {n_gens}"
            )));
        }
    }
    Ok(InputSpec {
        ring,
        module,
        submodule_u,
        config,
        bourbaki_mode,
    })
}

pub fn load_input(path: &Path) -> Result<InputSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_input(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modlib;

    const EXAMPLE: &str = "\
# the running example
ring {
  field = zmod 32003
  vars = x y z
}
module {
  kind = direct_sum_of_ideals
  ideal = x^2, x*y
  ideal = y, z
}
config {
  seed = 7
}
";

    #[test]
    fn parses_direct_sum_input() {
        let spec = parse_input(EXAMPLE).unwrap();
        assert_eq!(spec.ring.nvars(), 3);
        assert_eq!(spec.config.seed, 7);
        let m = spec.build_module(&Budget::default()).unwrap();
        assert_eq!(m.num_generators(), 4);
        assert_eq!(modlib::module_rank(&m).unwrap(), 2);
    }

    #[test]
    fn parses_presentation_input() {
        let text = "\
ring {
  vars = x y
}
module {
  kind = presentation
  twists = 2 2 2
  row = y, 0
  row = -x, y
  row = 0, -x
}
";
        let spec = parse_input(text).unwrap();
        let m = spec.build_module(&Budget::default()).unwrap();
        assert_eq!(m.num_generators(), 3);
        assert_eq!(m.phi.cols, 2);
        assert!(m.graded);
    }

    #[test]
    fn submodule_indices_are_one_based() {
        let text = format!("{EXAMPLE}submodule_U = 1 3\n");
        let spec = parse_input(&text).unwrap();
        assert_eq!(spec.submodule_u, Some(vec![0, 2]));
        let bad = format!("{EXAMPLE}submodule_U = 0 1\n");
        assert!(parse_input(&bad).is_err());
        let oob = format!("{EXAMPLE}submodule_U = 5\n");
        assert!(parse_input(&oob).is_err());
    }

    #[test]
    fn rejects_malformed_inputs() {
        assert!(parse_input("ring {\n vars = x\n}\n").is_err());
        assert!(parse_input("ring {\n vars = x\n}\nmodule {\n kind = nope\n}\n").is_err());
        let unclosed = "ring {\n vars = x\n";
        assert!(parse_input(unclosed).is_err());
        let dup = "ring {\n vars = x\n}\nring {\n vars = y\n}\nmodule {\n kind = direct_sum_of_ideals\n ideal = x\n}\n";
        assert!(parse_input(dup).is_err());
    }

    #[test]
    fn default_field_and_mode() {
        let text = "ring {\n vars = x y\n}\nmodule {\n kind = direct_sum_of_ideals\n ideal = x, y\n}\n";
        let spec = parse_input(text).unwrap();
        assert_eq!(spec.ring.field, FieldSpec::default_prime());
        assert_eq!(spec.bourbaki_mode, BourbakiMode::Random);
        assert_eq!(spec.config.seed, 42);
    }
}
