use std::collections::BTreeMap;

use crate::category::{Category, Opposite, Translate};
use crate::determined::{find_witness, image_of_hom, is_right_determined, Fan};
use crate::error::Result;
use crate::linalg::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DichotomyParams {
    /// Non-epimorphisms are tested against every pool object of at most this
    /// length.
    pub c_max_len: usize,
    /// Failures kept verbatim in the report.
    pub max_failures: usize,
}

impl Default for DichotomyParams {
    fn default() -> Self {
        DichotomyParams {
            c_max_len: 3,
            max_failures: 20,
        }
    }
}

/// Counts for one side: epimorphisms with right determinedness, or (in the
/// opposite category) monomorphisms with left determinedness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SideReport {
    pub morphisms: usize,
    pub epis: usize,
    /// Epis determined by `τ⁻¹(Ker α)` at test bound `len X + len Y + 2`.
    pub epis_determined: usize,
    pub non_epis: usize,
    /// Pairs (non-epi, test object `C`).
    pub witness_checks: usize,
    /// Pairs with a witness of length at most `maxpart(C) + 1`.
    pub witnesses_within_short_bound: usize,
    /// Pairs with a witness of length at most `maxpart(C) + maxpart(Y)`.
    pub witnesses_within_long_bound: usize,
    pub failures: Vec<String>,
}

impl SideReport {
    pub fn epis_hold(&self) -> bool {
        self.epis == self.epis_determined
    }

    pub fn short_witnesses_hold(&self) -> bool {
        self.witness_checks == self.witnesses_within_short_bound
    }

    pub fn long_witnesses_hold(&self) -> bool {
        self.witness_checks == self.witnesses_within_long_bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyReport {
    pub params: DichotomyParams,
    pub right: SideReport,
    pub left: SideReport,
}

/// Over all morphisms between the given objects: every epimorphism `α` must
/// be right `τ⁻¹(Ker α)`-determined, and every non-epimorphism must fail to be
/// right `C`-determined for every pool object `C`. The dual statement for
/// monomorphisms runs through [`Opposite`], with `τ` in place of `τ⁻¹`.
pub fn epi_mono_dichotomy_report<C: Translate + ?Sized>(
    cat: &C,
    objects: &[C::Object],
    params: DichotomyParams,
) -> Result<DichotomyReport> {
    let right = side(cat, objects, params, |x| cat.tau_inverse(x))?;
    let left = side(&Opposite(cat), objects, params, |x| cat.tau(x))?;
    Ok(DichotomyReport {
        params,
        right,
        left,
    })
}

#[derive(Clone)]
enum Outcome {
    Epi(bool),
    NonEpi(Vec<(bool, bool, String)>),
}

fn side<C, F>(
    cat: &C,
    objects: &[C::Object],
    params: DichotomyParams,
    shift: F,
) -> Result<SideReport>
where
    C: Category + ?Sized,
    F: Fn(&C::Object) -> Result<C::Object>,
{
    let mut report = SideReport::default();
    let test_objects = cat.pool(params.c_max_len)?;
    for x in objects {
        let key_pool = cat.pool(cat.length(x))?;
        for y in objects {
            let max_y = cat.max_part(y)?;
            // Results depend only on the right class (and, for epis, the
            // kernel), so morphisms are grouped by their images.
            let mut memo: BTreeMap<(Vec<Subspace>, String), Outcome> = BTreeMap::new();
            for alpha in cat.enumerate_hom(x, y)? {
                report.morphisms += 1;
                let fan = Fan::single(cat, &alpha);
                let epi = cat.is_epi(&alpha);
                let kernel = if epi {
                    Some(cat.source(&cat.kernel(&alpha)))
                } else {
                    None
                };
                let key: Vec<Subspace> = key_pool
                    .iter()
                    .map(|t| image_of_hom(cat, t, &fan))
                    .collect();
                let kdesc = kernel.as_ref().map(|k| cat.describe(k)).unwrap_or_default();
                let outcome = match memo.get(&(key.clone(), kdesc.clone())) {
                    Some(o) => o.clone(),
                    None => {
                        let o = match &kernel {
                            Some(k) => {
                                let c = shift(k)?;
                                let bound = cat.length(x) + cat.length(y) + 2;
                                Outcome::Epi(
                                    is_right_determined(cat, &fan, &c, bound)?.is_determined(),
                                )
                            }
                            None => {
                                let mut per_c = Vec::new();
                                for c in &test_objects {
                                    let short = cat.max_part(c)? + 1;
                                    let long = cat.max_part(c)? + max_y;
                                    let found = find_witness(cat, &fan, c, long.max(short))?;
                                    let len = found.as_ref().map(|(t, _)| cat.length(t));
                                    per_c.push((
                                        len.is_some_and(|l| l <= short),
                                        len.is_some_and(|l| l <= long),
                                        cat.describe(c),
                                    ));
                                }
                                Outcome::NonEpi(per_c)
                            }
                        };
                        memo.insert((key, kdesc), o.clone());
                        o
                    }
                };
                let label = format!("{} -> {}", cat.describe(x), cat.describe(y));
                match outcome {
                    Outcome::Epi(ok) => {
                        report.epis += 1;
                        if ok {
                            report.epis_determined += 1;
                        } else if report.failures.len() < params.max_failures {
                            report.failures.push(format!(
                                "epi {label} not determined by the translated kernel"
                            ));
                        }
                    }
                    Outcome::NonEpi(per_c) => {
                        report.non_epis += 1;
                        for (short, long, c) in per_c {
                            report.witness_checks += 1;
                            report.witnesses_within_short_bound += short as usize;
                            report.witnesses_within_long_bound += long as usize;
                            if !short && report.failures.len() < params.max_failures {
                                report.failures.push(format!(
                                    "non-epi {label}: no witness of length <= maxpart(C) + 1 for C = {c}{}",
                                    if long { "" } else { " (none up to maxpart(C) + maxpart(Y) either)" }
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}
