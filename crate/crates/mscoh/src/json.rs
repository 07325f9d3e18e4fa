//! Line-oriented JSON formats for forms, plans, censuses, normal forms and
//! integral 3-forms. Indices are 1-based on the wire and every array is
//! sorted, so serializing a parsed sorted document reproduces it byte for
//! byte.

use mscoh_core::classify::{Census, WClass};
use mscoh_core::form::multisets;
use mscoh_core::integral::AltForm;
use mscoh_core::normal::NormalForm;
use mscoh_core::plan::{KbBlock, LinkPlan};
use mscoh_core::{F2Matrix, F2Vector, MsDescriptor, SymTrilinearForm};
use serde::{Deserialize, Serialize};

/// Input that parses as JSON but does not describe a valid object, or does
/// not parse at all.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> InputError {
    InputError::Invalid(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    pub rank: usize,
    pub w: Vec<u8>,
    pub triples: Vec<[usize; 3]>,
}

impl FormJson {
    pub fn from_descriptor(d: &MsDescriptor) -> Self {
        let rank = d.rank();
        FormJson {
            rank,
            w: (0..rank).map(|i| d.w.get(i) as u8).collect(),
            triples: multisets(rank)
                .filter(|&[i, j, k]| d.form.get(i, j, k))
                .map(|t| t.map(|i| i + 1))
                .collect(),
        }
    }

    pub fn to_descriptor(&self) -> Result<MsDescriptor, InputError> {
        let rank = self.rank;
        if rank > mscoh_core::f2::MAX_DIM {
            return Err(invalid(format!(
                "rank {rank} exceeds {}",
                mscoh_core::f2::MAX_DIM
            )));
        }
        if self.w.len() != rank {
            return Err(invalid(format!(
                "w has {} entries, rank is {rank}",
                self.w.len()
            )));
        }
        let mut w = F2Vector::zero(rank);
        for (i, &b) in self.w.iter().enumerate() {
            match b {
                0 => {}
                1 => w.set(i, true),
                _ => return Err(invalid(format!("w entry {b} is not 0 or 1"))),
            }
        }
        let mut form = SymTrilinearForm::zero(rank);
        for t in &self.triples {
            if let Some(&bad) = t.iter().find(|&&i| i == 0 || i > rank) {
                return Err(invalid(format!("triple index {bad} outside 1..={rank}")));
            }
            let [i, j, k] = t.map(|i| i - 1);
            if form.get(i, j, k) {
                return Err(invalid(format!("multiset {t:?} listed twice")));
            }
            form.set(i, j, k, true);
        }
        MsDescriptor::new(form, w).map_err(|e| invalid(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KbJson {
    pub a: usize,
    pub q: usize,
    pub k: u8,
    pub m: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanJson {
    pub orientable: bool,
    pub components: usize,
    pub framings: Vec<i64>,
    pub clasps: Vec<[usize; 2]>,
    pub borromeans: Vec<[usize; 3]>,
    pub rp2_blocks: Vec<usize>,
    pub kb_blocks: Vec<KbJson>,
}

fn bit(b: u8, what: &str) -> Result<bool, InputError> {
    match b {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(invalid(format!("kb parameter {what} = {b} is not 0 or 1"))),
    }
}

impl PlanJson {
    pub fn from_plan(p: &LinkPlan) -> Self {
        let p = p.normalized();
        PlanJson {
            orientable: p.orientable,
            components: p.n,
            framings: p.framings,
            clasps: p.clasps,
            borromeans: p.borromeans,
            rp2_blocks: p.rp2_blocks,
            kb_blocks: p
                .kb_blocks
                .iter()
                .map(|b| KbJson {
                    a: b.a,
                    q: b.q,
                    k: b.k as u8,
                    m: b.m as u8,
                })
                .collect(),
        }
    }

    /// Structural conversion only; call [`LinkPlan::validate`] for the plan
    /// invariants.
    pub fn to_plan(&self) -> Result<LinkPlan, InputError> {
        let kb_blocks = self
            .kb_blocks
            .iter()
            .map(|b| {
                Ok(KbBlock {
                    a: b.a,
                    q: b.q,
                    k: bit(b.k, "k")?,
                    m: bit(b.m, "m")?,
                })
            })
            .collect::<Result<_, InputError>>()?;
        Ok(LinkPlan {
            orientable: self.orientable,
            n: self.components,
            framings: self.framings.clone(),
            clasps: self.clasps.clone(),
            borromeans: self.borromeans.clone(),
            rp2_blocks: self.rp2_blocks.clone(),
            kb_blocks,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WClassJson {
    Zero,
    Nonzero,
}

impl From<WClass> for WClassJson {
    fn from(c: WClass) -> Self {
        match c {
            WClass::Zero => WClassJson::Zero,
            WClass::Nonzero => WClassJson::Nonzero,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsJson {
    pub sq_rank: usize,
    pub cup_kernel_dim: usize,
    pub sigma: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub representative: FormJson,
    pub orbit_size: u64,
    pub invariants: InvariantsJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusJson {
    pub rho: usize,
    pub w_class: WClassJson,
    pub classes: Vec<ClassJson>,
}

impl CensusJson {
    pub fn from_census(c: &Census) -> Self {
        CensusJson {
            rho: c.rho,
            w_class: c.w_class.into(),
            classes: c
                .classes
                .iter()
                .map(|k| ClassJson {
                    representative: FormJson::from_descriptor(&k.representative),
                    orbit_size: k.orbit_size,
                    invariants: InvariantsJson {
                        sq_rank: k.invariants.sq_rank,
                        cup_kernel_dim: k.invariants.cup_kernel_dim,
                        sigma: k.invariants.sigma,
                    },
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ReportJson {
    Orientable {
        a: usize,
        b: usize,
        c: usize,
    },
    Nonorientable {
        sigma: usize,
        w_square_nonzero: bool,
        pairs: Vec<[usize; 2]>,
    },
}

/// A basis change as its rows of 0/1 entries, plus the normalized form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormJson {
    pub basis_change: Vec<Vec<u8>>,
    pub report: ReportJson,
    pub normal_form: FormJson,
}

pub fn matrix_rows(g: &F2Matrix) -> Vec<Vec<u8>> {
    (0..g.rows())
        .map(|r| (0..g.cols()).map(|c| g.get(r, c) as u8).collect())
        .collect()
}

impl NormalFormJson {
    pub fn new(d: &MsDescriptor, nf: &NormalForm) -> Self {
        let report = match nf {
            NormalForm::Orientable(b) => ReportJson::Orientable {
                a: b.report.a,
                b: b.report.b,
                c: b.report.c,
            },
            NormalForm::Nonorientable(b) => ReportJson::Nonorientable {
                sigma: b.report.sigma,
                w_square_nonzero: b.report.w_square_nonzero,
                pairs: b.report.pairs.iter().map(|&(p, q)| [p, q]).collect(),
            },
        };
        let g = nf.basis_change();
        let transported = d
            .transport(g)
            .expect("normalizing basis change is invertible");
        NormalFormJson {
            basis_change: matrix_rows(g),
            report,
            normal_form: FormJson::from_descriptor(&transported),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AltFormJson {
    pub beta: usize,
    pub coeffs: Vec<[i64; 4]>,
}

impl AltFormJson {
    pub fn from_form(mu: &AltForm) -> Self {
        AltFormJson {
            beta: mu.beta(),
            coeffs: mu
                .terms()
                .into_iter()
                .map(|([i, j, k], n)| [i as i64 + 1, j as i64 + 1, k as i64 + 1, n])
                .collect(),
        }
    }

    pub fn to_form(&self) -> Result<AltForm, InputError> {
        let beta = self.beta;
        let mut terms = Vec::with_capacity(self.coeffs.len());
        let mut seen = std::collections::BTreeSet::new();
        for &[i, j, k, n] in &self.coeffs {
            if !(1 <= i && i < j && j < k && k <= beta as i64) {
                return Err(invalid(format!(
                    "coefficient indices ({i},{j},{k}) must satisfy 1 <= i < j < k <= {beta}"
                )));
            }
            if n == 0 {
                return Err(invalid("listed coefficients must be nonzero"));
            }
            if !seen.insert([i, j, k]) {
                return Err(invalid(format!("triple ({i},{j},{k}) listed twice")));
            }
            terms.push(([i as usize - 1, j as usize - 1, k as usize - 1], n));
        }
        AltForm::from_terms(beta, &terms).map_err(|e| invalid(e.to_string()))
    }
}

pub fn to_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable value")
}

pub fn parse_form(line: &str) -> Result<MsDescriptor, InputError> {
    serde_json::from_str::<FormJson>(line)?.to_descriptor()
}

pub fn parse_plan(line: &str) -> Result<LinkPlan, InputError> {
    serde_json::from_str::<PlanJson>(line)?.to_plan()
}

pub fn parse_alt_form(line: &str) -> Result<AltForm, InputError> {
    serde_json::from_str::<AltFormJson>(line)?.to_form()
}

pub fn form_line(d: &MsDescriptor) -> String {
    to_line(&FormJson::from_descriptor(d))
}

pub fn plan_line(p: &LinkPlan) -> String {
    to_line(&PlanJson::from_plan(p))
}
