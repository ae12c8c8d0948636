//! Oracles for `h^0` of divisors supported on the marked points.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;
use crate::signature::Signature;
use crate::Algebra;

/// Role of a marked point on a hyperelliptic curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointTag {
    Weierstrass,
    /// Member of a conjugate pair; both members share the id.
    Pair(u32),
    Free,
}

impl PointTag {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "w" | "weierstrass" => Ok(Self::Weierstrass),
            "f" | "free" => Ok(Self::Free),
            t => t
                .strip_prefix("pair:")
                .and_then(|id| id.parse().ok())
                .map(Self::Pair)
                .ok_or_else(|| Error::Parse(format!("unknown point tag `{t}`"))),
        }
    }
}

impl std::fmt::Display for PointTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Weierstrass => f.write_str("w"),
            Self::Pair(id) => write!(f, "pair:{id}"),
            Self::Free => f.write_str("free"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum CurveModel {
    /// Section spaces of a branch algebra.
    Algebra {
        id: String,
        algebra: Arc<Algebra>,
        genus: i64,
    },
    /// A point with Weierstrass semigroup `H`. Further marked points are either
    /// part of a canonical divisor (positive `canonical` entry) or general.
    Unibranch {
        semigroup: NumericalSemigroup,
        canonical: Option<Vec<i64>>,
    },
    Hyperelliptic {
        genus: i64,
        tags: Vec<PointTag>,
    },
    /// The largest value allowed by Clifford's bound on a non-hyperelliptic curve.
    CliffordMax {
        genus: i64,
    },
    /// Fixed values on listed divisors, falling back to `base` elsewhere.
    Override {
        base: Box<CurveModel>,
        table: Vec<(Vec<i64>, i64)>,
    },
}

fn riemann_roch(deg: i64, g: i64) -> i64 {
    deg - g + 1
}

impl CurveModel {
    pub fn hyperelliptic(genus: i64, tags: Vec<PointTag>) -> Result<Self> {
        for tag in &tags {
            if let PointTag::Pair(id) = tag {
                let count = tags.iter().filter(|t| *t == tag).count();
                if count != 2 {
                    return Err(Error::InvalidInput(format!(
                        "pair:{id} tags {count} points, expected 2"
                    )));
                }
            }
        }
        if genus < 1 {
            return Err(Error::InvalidInput(
                "hyperelliptic model needs genus at least 1".into(),
            ));
        }
        Ok(Self::Hyperelliptic { genus, tags })
    }

    pub fn unibranch(semigroup: NumericalSemigroup, canonical: Option<Vec<i64>>) -> Result<Self> {
        if let Some(k) = &canonical {
            let g = semigroup.genus();
            if k.is_empty() || k.iter().sum::<i64>() != 2 * g - 2 || k.iter().any(|&c| c < 0) {
                return Err(Error::InvalidInput(format!(
                    "canonical orders {k:?} do not have degree {}",
                    2 * g - 2
                )));
            }
        }
        Ok(Self::Unibranch {
            semigroup,
            canonical,
        })
    }

    pub fn algebra(id: &str, algebra: Arc<Algebra>) -> Result<Self> {
        let (_, genus) = algebra.delta_and_genus()?;
        Ok(Self::Algebra {
            id: id.to_string(),
            algebra,
            genus,
        })
    }

    pub fn genus(&self) -> i64 {
        match self {
            Self::Algebra { genus, .. }
            | Self::Hyperelliptic { genus, .. }
            | Self::CliffordMax { genus } => *genus,
            Self::Unibranch { semigroup, .. } => semigroup.genus(),
            Self::Override { base, .. } => base.genus(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Algebra { id, .. } => format!("algebra[{id}]"),
            Self::Unibranch { semigroup, .. } => format!("unibranch{semigroup}"),
            Self::Hyperelliptic { tags, .. } => {
                let t: Vec<String> = tags.iter().map(|t| t.to_string()).collect();
                format!("hyperelliptic[{}]", t.join(","))
            }
            Self::CliffordMax { .. } => "clifford-max".into(),
            Self::Override { base, table } => {
                let rows: Vec<String> = table
                    .iter()
                    .map(|(d, h)| {
                        let d: Vec<String> = d.iter().map(|c| c.to_string()).collect();
                        format!("h0({})={h}", d.join(","))
                    })
                    .collect();
                format!("{}+{{{}}}", base.label(), rows.join(";"))
            }
        }
    }

    pub fn h0(&self, divisor: &[i64]) -> Result<i64> {
        let g = self.genus();
        let deg: i64 = divisor.iter().sum();
        match self {
            Self::Algebra { algebra, .. } => Ok(algebra.section_space(divisor)?.dimension as i64),
            Self::Override { base, table } => {
                match table.iter().find(|(d, _)| d.as_slice() == divisor) {
                    Some((_, h)) => Ok(*h),
                    None => base.h0(divisor),
                }
            }
            Self::CliffordMax { .. } => Ok(if deg < 0 {
                0
            } else if deg == 0 {
                1
            } else if deg > 2 * g - 2 {
                riemann_roch(deg, g)
            } else if deg == 2 * g - 2 {
                g
            } else {
                (deg + 1) / 2
            }),
            Self::Hyperelliptic { tags, .. } => {
                if divisor.len() != tags.len() {
                    return Err(Error::DivisorLength {
                        expected: tags.len(),
                        got: divisor.len(),
                    });
                }
                // Number of copies of the g^1_2 that can be split off the divisor.
                let mut pencils = 0i64;
                for (i, (tag, &c)) in tags.iter().zip(divisor).enumerate() {
                    pencils += match tag {
                        PointTag::Weierstrass => c.div_euclid(2),
                        PointTag::Free => c.min(0),
                        PointTag::Pair(id) => {
                            let first =
                                tags.iter().position(|t| t == &PointTag::Pair(*id)).unwrap();
                            if first == i {
                                let mate = tags
                                    .iter()
                                    .rposition(|t| t == &PointTag::Pair(*id))
                                    .unwrap();
                                c.min(divisor[mate])
                            } else {
                                0
                            }
                        }
                    };
                }
                Ok((pencils + 1).max(riemann_roch(deg, g)).max(0))
            }
            Self::Unibranch {
                semigroup,
                canonical,
            } => unibranch_h0(semigroup, canonical.as_deref(), divisor, self),
        }
    }

    /// Dimensions of the filtration pieces `F^lambda` of `m * omega_log`, for `lambda = 0..=m*ell`.
    pub fn filtration_dims(&self, sig: &Signature, m: i64) -> Result<Vec<i64>> {
        if self.genus() != sig.genus() {
            return Err(Error::GenusMismatch {
                model: self.genus(),
                signature: sig.genus(),
            });
        }
        (0..=m * sig.ell())
            .map(|lambda| self.h0(&sig.filtration_divisor(m, lambda)))
            .collect()
    }
}

fn unibranch_h0(
    h: &NumericalSemigroup,
    canonical: Option<&[i64]>,
    divisor: &[i64],
    model: &CurveModel,
) -> Result<i64> {
    let g = h.genus();
    let deg: i64 = divisor.iter().sum();
    if deg < 0 {
        return Ok(0);
    }
    if deg > 2 * g - 2 {
        return Ok(riemann_roch(deg, g));
    }
    let unsupported = || Error::UnsupportedDivisor {
        model: model.label(),
        divisor: divisor.to_vec(),
    };
    if divisor.is_empty() {
        return Err(unsupported());
    }
    let on_canonical = |j: usize| canonical.is_some_and(|k| k.get(j).copied().unwrap_or(0) > 0);
    if let Some(k) = canonical {
        if k.len() != divisor.len() {
            return Err(Error::DivisorLength {
                expected: k.len(),
                got: divisor.len(),
            });
        }
    }
    // Split into the part on the distinguished point and canonical support,
    // and the part on general points.
    let mut fixed = vec![0i64; divisor.len()];
    let (mut plus, mut minus) = (0i64, 0i64);
    for (j, &c) in divisor.iter().enumerate() {
        if j == 0 || on_canonical(j) {
            fixed[j] = c;
        } else if canonical.is_none() && c != 0 {
            return Err(unsupported());
        } else if c > 0 {
            plus += c;
        } else {
            minus -= c;
        }
    }
    let fixed_deg: i64 = fixed.iter().sum();
    let base = if fixed_deg < 0 {
        0
    } else if fixed_deg > 2 * g - 2 {
        riemann_roch(fixed_deg, g)
    } else if fixed[1..].iter().all(|&c| c == 0) {
        h.count_up_to(fixed[0])
    } else {
        let k = canonical.ok_or_else(unsupported)?;
        // K - fixed supported on the distinguished point: use Riemann-Roch on the residual.
        let residual_elsewhere = (1..fixed.len()).all(|j| fixed[j] == k[j]);
        let c = k[0] - fixed[0];
        if !residual_elsewhere || c < 0 {
            return Err(unsupported());
        }
        g - 1 - c + h.count_up_to(c)
    };
    let special = base - riemann_roch(fixed_deg, g);
    let raised = base + plus - plus.min(special.max(0));
    Ok((raised - minus).max(0))
}

/// Model description as it appears in input files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelSpec {
    Hyperelliptic {
        tags: Vec<String>,
    },
    Unibranch {
        generators: Vec<i64>,
    },
    CliffordMax,
    Override {
        base: Box<ModelSpec>,
        table: Vec<OverrideRow>,
    },
    /// Section spaces of a catalog algebra.
    Algebra {
        catalog: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverrideRow {
    pub divisor: Vec<i64>,
    pub h0: i64,
}

impl ModelSpec {
    /// Parses either JSON or one of the short forms `clifford-max`,
    /// `hyperelliptic:w,pair:1,pair:1`, `unibranch:3,7`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            return serde_json::from_str(text).map_err(|e| {
                Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
            });
        }
        if text == "clifford-max" {
            return Ok(Self::CliffordMax);
        }
        if let Some(rest) = text.strip_prefix("hyperelliptic:") {
            return Ok(Self::Hyperelliptic {
                tags: rest.split(',').map(|s| s.trim().to_string()).collect(),
            });
        }
        if let Some(rest) = text.strip_prefix("unibranch:") {
            let generators = rest
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad generator `{s}`")))
                })
                .collect::<Result<Vec<i64>>>()?;
            return Ok(Self::Unibranch { generators });
        }
        if let Some(id) = text.strip_prefix("algebra:") {
            return Ok(Self::Algebra {
                catalog: id.trim().to_string(),
            });
        }
        Err(Error::Parse(format!("unknown model `{text}`")))
    }

    /// Builds the model for `sig`. `lookup` resolves catalog algebra ids.
    pub fn build(
        &self,
        sig: &Signature,
        lookup: &dyn Fn(&str) -> Result<Arc<Algebra>>,
    ) -> Result<CurveModel> {
        let model = match self {
            Self::CliffordMax => CurveModel::CliffordMax { genus: sig.genus() },
            Self::Hyperelliptic { tags } => {
                let tags = tags
                    .iter()
                    .map(|t| PointTag::parse(t))
                    .collect::<Result<Vec<_>>>()?;
                if tags.len() != sig.len() {
                    return Err(Error::DivisorLength {
                        expected: sig.len(),
                        got: tags.len(),
                    });
                }
                CurveModel::hyperelliptic(sig.genus(), tags)?
            }
            Self::Unibranch { generators } => {
                let h = NumericalSemigroup::from_generators(generators)?;
                CurveModel::unibranch(h, Some(sig.orders().to_vec()))?
            }
            Self::Override { base, table } => CurveModel::Override {
                base: Box::new(base.build(sig, lookup)?),
                table: table.iter().map(|r| (r.divisor.clone(), r.h0)).collect(),
            },
            Self::Algebra { catalog } => {
                let alg = lookup(catalog)?;
                if alg.signature() != sig {
                    return Err(Error::InvalidInput(format!(
                        "catalog algebra {catalog} has signature {}, not {sig}",
                        alg.signature()
                    )));
                }
                CurveModel::algebra(catalog, alg)?
            }
        };
        if model.genus() != sig.genus() {
            return Err(Error::GenusMismatch {
                model: model.genus(),
                signature: sig.genus(),
            });
        }
        Ok(model)
    }
}
