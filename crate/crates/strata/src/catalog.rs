//! Shipped singularity data: named entries, parametric families, and exclusion rules.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::branch_algebra::{trim_gaps, AlgebraInput, GeneratorSpec, MonomialSpec};
use crate::curve_models::{CurveModel, ModelSpec};
use crate::error::{Error, Result};
use crate::invariants::{alpha, slope, verify_weight_identities, InvariantsRecord, WeightSpectrum};
use crate::scalar::{format_rational, parse_rational};
use crate::semigroup::NumericalSemigroup;
use crate::signature::Signature;
use crate::{Algebra, Rational};

const BUILTIN: &str = include_str!("../data/catalog.json");

/// Values an entry must reproduce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub gap_sequence: Vec<usize>,
    pub delta: i64,
    pub chi1_log: i64,
    pub chi2_log: i64,
    pub alpha: String,
    pub slope: String,
    pub spin: Option<String>,
    pub ambient_weights: Vec<i64>,
    /// `dim F^lambda` of the log-canonical filtration, `lambda = 0..=ell`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration_m1: Option<Vec<i64>>,
}

/// One catalog record: branch algebra input plus labels and expected values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    pub signature: Vec<i64>,
    pub component: Option<String>,
    /// The algebra is a degeneration of hyperelliptic curves.
    #[serde(default)]
    pub hyperelliptic: bool,
    /// Tag of the classification item this entry realizes.
    pub item: Option<String>,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub dualizing_units: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub high_order_from: Option<i64>,
    /// Curve model used instead of the algebra's own section spaces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub expected: Option<Expected>,
}

/// A signature and component the classifier must drop, with the reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub signature: Vec<i64>,
    pub component: Option<String>,
    pub reason: String,
}

#[derive(Deserialize)]
struct CatalogFile {
    entries: Vec<CatalogEntry>,
    exclusions: Vec<Exclusion>,
}

/// Component-qualified signature label such as `(4,2)^even`.
pub fn component_label(sig: &[i64], component: Option<&str>) -> String {
    let parts: Vec<String> = sig.iter().map(|m| m.to_string()).collect();
    match component {
        Some(c) => format!("({})^{c}", parts.join(",")),
        None => format!("({})", parts.join(",")),
    }
}

impl CatalogEntry {
    pub fn input(&self) -> AlgebraInput {
        AlgebraInput {
            signature: self.signature.clone(),
            generators: self.generators.clone(),
            dualizing_units: self.dualizing_units.clone(),
            high_order_from: self.high_order_from,
        }
    }

    pub fn parsed_signature(&self) -> Result<Signature> {
        Signature::derive(&self.signature)
    }

    pub fn label(&self) -> String {
        let mut sorted = self.signature.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        component_label(&sorted, self.component.as_deref())
    }

    pub fn matches(&self, key: &str) -> bool {
        self.id == key || self.aliases.iter().any(|a| a == key)
    }

    /// The same entry with `k` ordinary marked points appended.
    pub fn with_ordinary_points(&self, k: usize) -> Result<Self> {
        let input = with_ordinary_points(&self.input(), k)?;
        let sig = Signature::derive(&input.signature)?;
        let ell = sig.ell();
        let expected = match &self.expected {
            None => None,
            Some(e) => {
                let chi1 = BigInt::from(e.chi1_log);
                let chi2 = BigInt::from(e.chi2_log + k as i64 * ell);
                let mut ambient = e.ambient_weights.clone();
                let hyperplane = ambient.pop();
                ambient.extend(std::iter::repeat_n(ell, k));
                ambient.extend(hyperplane);
                Some(Expected {
                    gap_sequence: e.gap_sequence.clone(),
                    delta: e.delta + k as i64,
                    chi1_log: e.chi1_log,
                    chi2_log: e.chi2_log + k as i64 * ell,
                    alpha: format_rational(&alpha(&chi1, &chi2, &sig, &[])?),
                    slope: format_rational(&slope(&chi1, &chi2, &sig)?.ratio),
                    spin: None,
                    ambient_weights: ambient,
                    filtration_m1: None,
                })
            }
        };
        Ok(Self {
            id: format!("{}+{k}pt", self.id),
            aliases: Vec::new(),
            signature: input.signature,
            component: self.component.clone(),
            hyperelliptic: self.hyperelliptic,
            item: self.item.clone(),
            generators: input.generators,
            dualizing_units: input.dualizing_units,
            high_order_from: input.high_order_from,
            model: None,
            note: None,
            expected,
        })
    }
}

/// Appends `k` zero-order branches, each glued by a generator `t_1^{m_1+1} + s_j`
/// where branch 1 has the largest order. The new dualizing unit is `-u_1`.
pub fn with_ordinary_points(input: &AlgebraInput, k: usize) -> Result<AlgebraInput> {
    if k == 0 {
        return Err(Error::InvalidInput(
            "number of ordinary points must be at least 1".into(),
        ));
    }
    if input.signature.is_empty() {
        return Err(Error::EmptySignature);
    }
    let n = input.signature.len();
    // First branch of largest order in input numbering.
    let top = (0..n)
        .max_by_key(|&i| (input.signature[i], std::cmp::Reverse(i)))
        .unwrap();
    let exp = input.signature[top] + 1;
    let mut out = input.clone();
    out.signature.extend(std::iter::repeat_n(0, k));
    for j in 0..k {
        out.generators.push(GeneratorSpec {
            name: format!("s{}", j + 1),
            monomials: vec![
                MonomialSpec {
                    branch: top + 1,
                    exp,
                    coeff: "1".into(),
                },
                MonomialSpec {
                    branch: n + j + 1,
                    exp: 1,
                    coeff: "1".into(),
                },
            ],
        });
    }
    if let Some(units) = &mut out.dualizing_units {
        let u1 = parse_rational(&units[top])?;
        units.extend(std::iter::repeat_n(format_rational(&-u1), k));
    } else if n == 1 {
        out.dualizing_units = Some(
            std::iter::once("1".to_string())
                .chain(std::iter::repeat_n("-1".into(), k))
                .collect(),
        );
    }
    Ok(out)
}

/// A signature with a curve model, ready for weight computations.
#[derive(Clone, Debug)]
pub struct Source {
    pub id: String,
    pub signature: Signature,
    pub component: Option<String>,
    pub model: CurveModel,
}

impl Source {
    /// Algebra-backed sources read multiplicities off graded dimensions; others use the filtration.
    pub fn spectrum(&self, m: i64) -> Result<WeightSpectrum> {
        match &self.model {
            CurveModel::Algebra { algebra, .. } => WeightSpectrum::from_algebra(algebra, m),
            other => WeightSpectrum::from_model(other, &self.signature, m),
        }
    }

    pub fn label(&self) -> String {
        component_label(self.signature.orders(), self.component.as_deref())
    }

    /// Invariants record with levels 1 and 2 and any further `levels`.
    pub fn record(&self, levels: &[i64]) -> Result<InvariantsRecord> {
        let l1 = self.spectrum(1)?;
        let l2 = self.spectrum(2)?;
        let extra = levels
            .iter()
            .filter(|&&m| m > 2)
            .map(|&m| self.spectrum(m))
            .collect::<Result<Vec<_>>>()?;
        InvariantsRecord::build(
            &self.signature,
            self.component.clone(),
            self.model.label(),
            &l1,
            &l2,
            &extra,
        )
    }
}

/// The shipped entries and exclusions.
#[derive(Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    exclusions: Vec<Exclusion>,
    cache: Mutex<HashMap<(String, i64), Arc<Algebra>>>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CatalogFile = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!(
                "catalog line {} column {}: {e}",
                e.line(),
                e.column()
            ))
        })?;
        Ok(Self {
            entries: file.entries,
            exclusions: file.exclusions,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::from_json(BUILTIN).expect("shipped catalog parses"))
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn exclusions(&self) -> &[Exclusion] {
        &self.exclusions
    }

    pub fn get(&self, key: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.matches(key))
            .ok_or_else(|| Error::UnknownEntry(key.to_string()))
    }

    /// Entries whose sorted signature and component equal the given ones.
    pub fn find(&self, sig: &Signature, component: Option<&str>) -> Vec<&CatalogEntry> {
        self.entries
            .iter()
            .filter(|e| {
                let mut s = e.signature.clone();
                s.sort_unstable_by(|a, b| b.cmp(a));
                s == sig.orders() && e.component.as_deref() == component
            })
            .collect()
    }

    pub fn exclusion(&self, sig: &Signature, component: Option<&str>) -> Option<&Exclusion> {
        self.exclusions
            .iter()
            .find(|x| x.signature == sig.orders() && x.component.as_deref() == component)
    }

    /// The closed algebra of an entry, with a cap good for weight levels up to `level`.
    pub fn algebra(&self, key: &str, level: i64) -> Result<Arc<Algebra>> {
        let entry = self.get(key)?;
        let level = level.max(2);
        let cache_key = (entry.id.clone(), level);
        if let Some(a) = self.cache.lock().expect("cache lock").get(&cache_key) {
            return Ok(a.clone());
        }
        let alg = Arc::new(entry.input().resolve()?.close(level)?);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(cache_key, alg.clone());
        Ok(alg)
    }

    /// The curve model an entry stands for.
    pub fn model(&self, key: &str, level: i64) -> Result<CurveModel> {
        let entry = self.get(key)?;
        match &entry.model {
            Some(spec) => spec.build(&entry.parsed_signature()?, &|id| self.algebra(id, level)),
            None => CurveModel::algebra(&entry.id, self.algebra(key, level)?),
        }
    }

    pub fn source(&self, key: &str, level: i64) -> Result<Source> {
        let entry = self.get(key)?;
        Ok(Source {
            id: entry.id.clone(),
            signature: entry.parsed_signature()?,
            component: entry.component.clone(),
            model: self.model(key, level)?,
        })
    }
}

/// One disagreement between an entry and the engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub entry: String,
    pub field: String,
    pub expected: String,
    pub actual: String,
}

/// Recomputes every stored field of `entry` and reports the differences.
pub fn check_entry(entry: &CatalogEntry) -> Result<Vec<Mismatch>> {
    let mut out = Vec::new();
    let mut cmp = |field: &str, expected: String, actual: String| {
        if expected != actual {
            out.push(Mismatch {
                entry: entry.id.clone(),
                field: field.into(),
                expected,
                actual,
            });
        }
    };
    let resolved = entry.input().resolve()?;
    let alg = resolved.close(2)?;
    let sig = resolved.signature.clone();
    let report = alg.conductor_and_gorenstein()?;
    cmp("gorenstein", "true".into(), report.gorenstein.to_string());
    if let Some(units) = &resolved.units {
        let g = alg.validate_g_conditions(units)?;
        cmp("g_conditions", "true".into(), g.all_pass().to_string());
    }
    let Some(e) = &entry.expected else {
        return Ok(out);
    };
    cmp(
        "gap_sequence",
        format!("{:?}", e.gap_sequence),
        format!("{:?}", trim_gaps(&alg.gap_sequence()?)),
    );
    cmp("delta", e.delta.to_string(), report.delta.to_string());
    let spin = alg.spin_parity()?.map(|p| p.to_string());
    if e.spin.is_some() {
        cmp("spin", format!("{:?}", e.spin), format!("{spin:?}"));
    }
    let l1 = WeightSpectrum::from_algebra(&alg, 1)?;
    let l2 = WeightSpectrum::from_algebra(&alg, 2)?;
    cmp("chi1_log", e.chi1_log.to_string(), l1.chi_log.to_string());
    cmp("chi2_log", e.chi2_log.to_string(), l2.chi_log.to_string());
    cmp(
        "alpha",
        e.alpha.clone(),
        format_rational(&alpha(&l1.chi_log, &l2.chi_log, &sig, &[])?),
    );
    let s = slope(&l1.chi_log, &l2.chi_log, &sig)?;
    cmp("slope", e.slope.clone(), format_rational(&s.ratio));
    cmp("slope_closed", e.slope.clone(), format_rational(&s.closed));
    let sorted = |mut v: Vec<i64>| {
        v.sort_unstable();
        format!("{v:?}")
    };
    cmp(
        "ambient_weights",
        sorted(e.ambient_weights.clone()),
        sorted(alg.ambient_weights()),
    );
    if let Some(f) = &e.filtration_m1 {
        let model = CurveModel::algebra(&entry.id, Arc::new(alg.clone()))?;
        cmp(
            "filtration_m1",
            format!("{f:?}"),
            format!("{:?}", model.filtration_dims(&sig, 1)?),
        );
    }
    let identities = verify_weight_identities(&l2, &l1, &sig);
    cmp(
        "identities_m2",
        "true".into(),
        identities.all_hold().to_string(),
    );
    Ok(out)
}

/// Parametric families of singularities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `y^2 = x^{2g+1}`, one branch.
    AEven { g: i64 },
    /// `y^2 = x^{2g+2}`, two branches.
    AOdd { g: i64 },
    /// `x(y^2 - x^{2g-1})`, orders `(2g-2, 0)`.
    DOdd { g: i64 },
    /// `x(y^2 - x^{2g})`, orders `(g-1, g-1, 0)`.
    DEven { g: i64 },
    /// `n` general lines through a point, genus 1.
    Elliptic { n: i64 },
    /// Monomial curve of a symmetric semigroup.
    Monomial { generators: Vec<i64> },
    /// Principal stratum at the Clifford maximum.
    Principal { g: i64 },
    /// Odd spin component of `(2,...,2)` with one-dimensional half-canonical sections.
    OddSpin { g: i64 },
    /// Unibranch point with gaps `1..g-1, g+1`, orders `(g, 1, ..., 1)`.
    WeierstrassNormal { g: i64 },
}

pub const FAMILY_NAMES: [&str; 9] = [
    "A2g",
    "A2g+1",
    "D2g+1",
    "D2g+2",
    "elliptic",
    "monomial",
    "principal",
    "odd-spin",
    "weierstrass-normal",
];

fn int_param(name: &str, param: &str) -> Result<i64> {
    param
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("family {name} expects an integer, got `{param}`")))
}

fn gen(name: &str, terms: &[(usize, i64, &str)]) -> GeneratorSpec {
    GeneratorSpec {
        name: name.into(),
        monomials: terms
            .iter()
            .map(|&(branch, exp, c)| MonomialSpec {
                branch,
                exp,
                coeff: c.into(),
            })
            .collect(),
    }
}

impl Family {
    /// `name` is one of [`FAMILY_NAMES`]; `param` is `g`, `n`, or a comma-separated generator list.
    pub fn parse(name: &str, param: &str) -> Result<Self> {
        let family = match name {
            "A2g" => Self::AEven {
                g: int_param(name, param)?,
            },
            "A2g+1" => Self::AOdd {
                g: int_param(name, param)?,
            },
            "D2g+1" => Self::DOdd {
                g: int_param(name, param)?,
            },
            "D2g+2" => Self::DEven {
                g: int_param(name, param)?,
            },
            "elliptic" => Self::Elliptic {
                n: int_param(name, param)?,
            },
            "monomial" => Self::Monomial {
                generators: param
                    .split(',')
                    .map(|s| int_param(name, s))
                    .collect::<Result<Vec<_>>>()?,
            },
            "principal" => Self::Principal {
                g: int_param(name, param)?,
            },
            "odd-spin" => Self::OddSpin {
                g: int_param(name, param)?,
            },
            "weierstrass-normal" => Self::WeierstrassNormal {
                g: int_param(name, param)?,
            },
            _ => return Err(Error::UnknownFamily(name.to_string())),
        };
        family.validate()?;
        Ok(family)
    }

    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidInput(msg));
        match self {
            Self::AEven { g } | Self::AOdd { g } | Self::DOdd { g } | Self::DEven { g }
                if *g < 2 =>
            {
                fail(format!("A/D families need g >= 2, got {g}"))
            }
            Self::Elliptic { n } if *n < 3 => {
                fail(format!("elliptic points need n >= 3 lines, got {n}"))
            }
            Self::Principal { g } | Self::OddSpin { g } if *g < 2 => {
                fail(format!("need g >= 2, got {g}"))
            }
            Self::WeierstrassNormal { g } if *g < 3 => fail(format!("need g >= 3, got {g}")),
            Self::Monomial { generators } => {
                let h = NumericalSemigroup::from_generators(generators)?;
                if !h.is_symmetric() || h.genus() < 1 {
                    return fail(format!("semigroup {h} is not symmetric of positive genus"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn id(&self) -> String {
        match self {
            Self::AEven { g } => format!("A{}", 2 * g),
            Self::AOdd { g } => format!("A{}", 2 * g + 1),
            Self::DOdd { g } => format!("D{}", 2 * g + 1),
            Self::DEven { g } => format!("D{}", 2 * g + 2),
            Self::Elliptic { n } => format!("elliptic-{n}"),
            Self::Monomial { generators } => {
                let h = NumericalSemigroup::from_generators(generators).expect("validated");
                format!("monomial{h}")
            }
            Self::Principal { g } => format!("principal-g{g}"),
            Self::OddSpin { g } => format!("odd-spin-g{g}"),
            Self::WeierstrassNormal { g } => format!("weierstrass-normal-g{g}"),
        }
    }

    /// Generator data, for the algebra-backed families.
    pub fn input(&self) -> Option<AlgebraInput> {
        let input = |signature: Vec<i64>, generators, units: &[&str]| AlgebraInput {
            signature,
            generators,
            dualizing_units: Some(units.iter().map(|u| u.to_string()).collect()),
            high_order_from: None,
        };
        match self {
            Self::AEven { g } => Some(input(
                vec![2 * g - 2],
                vec![gen("x", &[(1, 2, "1")]), gen("y", &[(1, 2 * g + 1, "1")])],
                &["1"],
            )),
            Self::AOdd { g } => Some(input(
                vec![g - 1, g - 1],
                vec![
                    gen("x", &[(1, 1, "1"), (2, 1, "1")]),
                    gen("y", &[(1, g + 1, "1"), (2, g + 1, "-1")]),
                ],
                &["1", "-1"],
            )),
            Self::DOdd { g } => Some(input(
                vec![2 * g - 2, 0],
                vec![
                    gen("x", &[(1, 2, "1")]),
                    gen("y", &[(1, 2 * g - 1, "1"), (2, 1, "1")]),
                ],
                &["1", "-1"],
            )),
            Self::DEven { g } => Some(input(
                vec![g - 1, g - 1, 0],
                vec![
                    gen("x", &[(1, 1, "1"), (2, 1, "1")]),
                    gen("y", &[(1, *g, "1"), (2, *g, "-1"), (3, 1, "1")]),
                ],
                &["1", "-1", "-2"],
            )),
            Self::Elliptic { n } => {
                let n = *n as usize;
                let nodes: Vec<i64> = (0..n as i64).collect();
                let generators = (0..n - 1)
                    .map(|k| {
                        let terms: Vec<MonomialSpec> = nodes
                            .iter()
                            .enumerate()
                            .map(|(i, s)| MonomialSpec {
                                branch: i + 1,
                                exp: 1,
                                coeff: s.pow(k as u32).to_string(),
                            })
                            .collect();
                        GeneratorSpec {
                            name: format!("x{}", k + 1),
                            monomials: terms,
                        }
                    })
                    .collect();
                // The dualizing units span the annihilator of the lines: 1 / prod_{j != i} (s_i - s_j).
                let units = nodes
                    .iter()
                    .map(|&si| {
                        let prod: i64 = nodes
                            .iter()
                            .filter(|&&sj| sj != si)
                            .map(|&sj| si - sj)
                            .product();
                        format_rational(&Rational::new(1.into(), prod.into()))
                    })
                    .collect();
                Some(AlgebraInput {
                    signature: vec![0; n],
                    generators,
                    dualizing_units: Some(units),
                    high_order_from: None,
                })
            }
            Self::Monomial { generators } => {
                let h = NumericalSemigroup::from_generators(generators).expect("validated");
                let gens = h
                    .generators()
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| gen(&format!("x{}", i + 1), &[(1, e, "1")]))
                    .collect();
                Some(input(vec![2 * h.genus() - 2], gens, &["1"]))
            }
            Self::Principal { .. } | Self::OddSpin { .. } | Self::WeierstrassNormal { .. } => None,
        }
    }

    pub fn signature(&self) -> Result<Signature> {
        match self {
            Self::Principal { g } => Signature::derive(&vec![1; 2 * *g as usize - 2]),
            Self::OddSpin { g } => Signature::derive(&vec![2; *g as usize - 1]),
            Self::WeierstrassNormal { g } => {
                let mut orders = vec![*g];
                orders.extend(std::iter::repeat_n(1, *g as usize - 2));
                Signature::derive(&orders)
            }
            other => Signature::derive(&other.input().expect("algebra family").signature),
        }
    }

    pub fn component(&self) -> Option<String> {
        match self {
            Self::AEven { .. } | Self::AOdd { .. } | Self::DOdd { .. } | Self::DEven { .. } => {
                Some("hyp".into())
            }
            Self::OddSpin { .. } => Some("odd".into()),
            Self::Monomial { generators } => {
                let sig = self.signature().ok()?;
                let h = NumericalSemigroup::from_generators(generators).ok()?;
                if h.is_hyperelliptic() {
                    Some("hyp".into())
                } else if sig.genus() >= 3 {
                    let half = sig.orders()[0] / 2;
                    Some(
                        if h.count_up_to(half) % 2 == 1 {
                            "odd"
                        } else {
                            "even"
                        }
                        .into(),
                    )
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn source(&self, level: i64) -> Result<Source> {
        let signature = self.signature()?;
        let g = signature.genus();
        let model = match self {
            Self::Principal { .. } => CurveModel::CliffordMax { genus: g },
            Self::OddSpin { .. } => CurveModel::Override {
                base: Box::new(CurveModel::CliffordMax { genus: g }),
                table: vec![(vec![1; signature.len()], 1)],
            },
            Self::WeierstrassNormal { .. } => {
                let mut gaps: Vec<i64> = (1..g).collect();
                gaps.push(g + 1);
                CurveModel::unibranch(
                    NumericalSemigroup::from_gaps(&gaps)?,
                    Some(signature.orders().to_vec()),
                )?
            }
            other => {
                let input = other.input().expect("algebra family");
                CurveModel::algebra(&self.id(), Arc::new(input.resolve()?.close(level.max(2))?))?
            }
        };
        Ok(Source {
            id: self.id(),
            signature,
            component: self.component(),
            model,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads_and_ids_are_unique() {
        let c = Catalog::builtin();
        let mut ids: Vec<&str> = c.entries().iter().map(|e| e.id.as_str()).collect();
        ids.sort_unstable();
        let before = ids.len();
        ids.dedup();
        assert_eq!(before, ids.len());
        assert!(c.get("E7").is_ok() && c.get("(3,1)").is_ok());
        assert!(matches!(c.get("nope"), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn e7_entry_checks_clean() {
        let entry = Catalog::builtin().get("E7").unwrap();
        assert_eq!(check_entry(entry).unwrap(), vec![]);
    }

    #[test]
    fn ordinary_point_on_e7() {
        let entry = Catalog::builtin()
            .get("E7")
            .unwrap()
            .with_ordinary_points(1)
            .unwrap();
        assert_eq!(entry.signature, vec![3, 1, 0]);
        assert_eq!(entry.expected.as_ref().unwrap().chi2_log, 35);
        assert_eq!(check_entry(&entry).unwrap(), vec![]);
    }

    #[test]
    fn family_parse_errors() {
        assert!(matches!(
            Family::parse("B7", "3"),
            Err(Error::UnknownFamily(_))
        ));
        assert!(Family::parse("elliptic", "2").is_err());
        assert!(Family::parse("monomial", "3,4,5").is_err());
        assert_eq!(Family::parse("A2g", "3").unwrap().id(), "A6");
    }
}
