use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::Args;
use strata::branch_algebra::AlgebraInput;
use strata::catalog::{with_ordinary_points, Catalog, Family, Source};
use strata::curve_models::{CurveModel, ModelSpec};
use strata::signature::Signature;
use strata::Algebra;

/// Where a signature and its curve model come from.
#[derive(Args, Debug, Clone)]
pub struct SourceArgs {
    /// Catalog id or alias, e.g. `E7` or `(3,1)`.
    #[arg(long, group = "source")]
    pub catalog: Option<String>,
    /// Parametric family name; its parameter goes in `--param`.
    #[arg(long, group = "source", requires = "param")]
    pub family: Option<String>,
    /// Family parameter: a genus, a line count, or generators like `3,7`.
    #[arg(long)]
    pub param: Option<String>,
    /// Branch algebra input document (JSON).
    #[arg(long, group = "source")]
    pub input: Option<PathBuf>,
    /// Zero orders, e.g. `3,1`; needs `--model`.
    #[arg(long, group = "source", requires = "model", allow_hyphen_values = true)]
    pub signature: Option<String>,
    /// `clifford-max`, `hyperelliptic:w,pair:1,pair:1`, `unibranch:3,7`, `algebra:E7`, or a JSON model spec.
    #[arg(long)]
    pub model: Option<String>,
    /// Component label attached to `--signature` sources.
    #[arg(long)]
    pub component: Option<String>,
    /// Number of ordinary points to add to an algebra-backed source.
    #[arg(long, default_value_t = 0)]
    pub ordinary_points: usize,
}

fn algebra_source(
    id: String,
    input: &AlgebraInput,
    k: usize,
    level: i64,
) -> anyhow::Result<Source> {
    let input = if k > 0 {
        with_ordinary_points(input, k)?
    } else {
        input.clone()
    };
    let resolved = input.resolve()?;
    let algebra = Arc::new(resolved.close(level)?);
    let id = if k > 0 { format!("{id}+{k}") } else { id };
    Ok(Source {
        model: CurveModel::algebra(&id, algebra)?,
        id,
        signature: resolved.signature,
        component: None,
    })
}

pub fn read_input(path: &PathBuf) -> anyhow::Result<AlgebraInput> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    AlgebraInput::from_json(&text).with_context(|| format!("in {}", path.display()))
}

impl SourceArgs {
    pub fn resolve(&self, catalog: &Catalog, level: i64) -> anyhow::Result<Source> {
        let k = self.ordinary_points;
        if let Some(key) = &self.catalog {
            let entry = catalog.get(key)?;
            if k == 0 {
                return Ok(catalog.source(key, level)?);
            }
            if entry.model.is_some() {
                bail!(
                    "entry `{}` is not algebra-backed; --ordinary-points needs generator data",
                    entry.id
                );
            }
            let mut src = algebra_source(entry.id.clone(), &entry.input(), k, level)?;
            src.component = entry.component.clone();
            return Ok(src);
        }
        if let Some(name) = &self.family {
            let family = Family::parse(name, self.param.as_deref().unwrap_or_default())?;
            if k == 0 {
                return Ok(family.source(level)?);
            }
            let Some(input) = family.input() else {
                bail!(
                    "family `{name}` is not algebra-backed; --ordinary-points needs generator data"
                );
            };
            return algebra_source(family.id(), &input, k, level);
        }
        if let Some(path) = &self.input {
            let id = path
                .file_stem()
                .map_or("input".into(), |s| s.to_string_lossy().into_owned());
            return algebra_source(id, &read_input(path)?, k, level);
        }
        if let Some(text) = &self.signature {
            if k > 0 {
                bail!("--ordinary-points applies to algebra-backed sources; append zeros to --signature instead");
            }
            let signature = Signature::parse(text)?;
            let spec = ModelSpec::parse(self.model.as_deref().unwrap_or_default())?;
            let lookup = |id: &str| -> strata::Result<Arc<Algebra>> { catalog.algebra(id, level) };
            let model = spec.build(&signature, &lookup)?;
            return Ok(Source {
                id: model.label(),
                signature,
                component: self.component.clone(),
                model,
            });
        }
        bail!("choose a source: --catalog, --family, --input, or --signature with --model")
    }
}
