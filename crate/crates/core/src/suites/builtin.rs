use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ar::{almost_split_check, almost_split_ending_at, projectively_trivial_check};
use crate::category::{Category, Extensions, Translate};
use crate::determined::{
    auslander_table, determiner_candidates, enumerate_submodules, epi_mono_dichotomy_report,
    factors_through, gamma_module, image_of_hom, is_right_determined, minimal_determiner,
    right_classes, DichotomyParams, Fan, Verdict,
};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::{QuiverCategory, RepMorphism, Representation};
use crate::suites::{dispatch, Instance, Suite, SuiteContext, SuiteOutcome, Tally};
use crate::tube::{gram_matrix, NilpotentPair, TubeCategory};
use crate::Opposite;

fn tube_only<'a>(ctx: &'a SuiteContext, suite: &str) -> Result<&'a TubeCategory> {
    match &ctx.instance {
        Instance::Tube(cat) => Ok(cat),
        Instance::Quiver(_) => Err(Error::Unsupported(format!("{suite} needs a tube instance"))),
    }
}

/// Test bound for determinedness queries: `len X + len Y + maxpart(C) + 1`.
pub fn default_bound<C: Category + ?Sized>(
    cat: &C,
    x: &C::Object,
    y: &C::Object,
    c: &C::Object,
) -> Result<usize> {
    Ok(cat.length(x) + cat.length(y) + cat.max_part(c)? + 1)
}

pub struct SerreDimSuite;

impl Suite for SerreDimSuite {
    fn name(&self) -> &'static str {
        "serre-dim"
    }

    fn description(&self) -> &'static str {
        "tube: dim Ext¹(X,Y) = dim Hom(Y,X), and the trace pairing is perfect"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let cat = tube_only(ctx, self.name())?;
        let bound = ctx.bound_or(5);
        let gram_bound = bound.min(4);
        let objs = cat.enumerate_objects(bound)?;
        let mut t = Tally::new(self.name());
        for x in &objs {
            for y in &objs {
                let ext = cat.ext1(x, y);
                let hom = cat.hom_dim(y, x);
                t.check(ext.dim() == hom, || {
                    format!(
                        "dim Ext¹({}, {}) = {} but dim Hom = {hom}",
                        cat.describe(x),
                        cat.describe(y),
                        ext.dim()
                    )
                });
                t.count("dimension_pairs", 1);
                if x.dim() <= gram_bound && y.dim() <= gram_bound {
                    let g = gram_matrix(&ext, &cat.hom_basis(y, x))?;
                    t.check(g.rows() == g.cols() && g.rank() == g.rows(), || {
                        format!(
                            "pairing on {} x {} is degenerate",
                            cat.describe(x),
                            cat.describe(y)
                        )
                    });
                    t.count("gram_matrices", 1);
                }
            }
        }
        t.line(format!(
            "{} objects of length <= {bound} over {}; Gram matrices up to length {gram_bound}",
            objs.len(),
            cat.field()
        ));
        Ok(t.finish())
    }
}

pub struct EpiDichotomySuite;

impl Suite for EpiDichotomySuite {
    fn name(&self) -> &'static str {
        "epi-dichotomy"
    }

    fn description(&self) -> &'static str {
        "tube: epis are determined by the translated kernel; non-epis have short witnesses; dual for monos"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let cat = tube_only(ctx, self.name())?;
        let bound = ctx.bound_or(3);
        let objs = cat.enumerate_objects(bound)?;
        let report = epi_mono_dichotomy_report(cat, &objs, DichotomyParams::default())?;
        let mut t = Tally::new(self.name());
        for (side, s) in [("right", &report.right), ("left", &report.left)] {
            let (kind, non) = if side == "right" {
                ("epi", "non-epi")
            } else {
                ("mono", "non-mono")
            };
            t.check(s.epis_hold(), || {
                format!(
                    "{side}: {} of {} {kind}s determined",
                    s.epis_determined, s.epis
                )
            });
            t.check(s.short_witnesses_hold(), || {
                format!(
                    "{side}: {} of {} ({non}, C) pairs have a witness of length <= maxpart(C) + 1",
                    s.witnesses_within_short_bound, s.witness_checks
                )
            });
            t.line(format!(
                "{side}: {} morphisms, {} {kind}s ({} determined), {} {non}s; witnesses within maxpart(C)+1: {}/{}, within maxpart(C)+maxpart(Y): {}/{}",
                s.morphisms,
                s.epis,
                s.epis_determined,
                s.non_epis,
                s.witnesses_within_short_bound,
                s.witness_checks,
                s.witnesses_within_long_bound,
                s.witness_checks
            ));
            for f in &s.failures {
                t.line(format!("{side}: {f}"));
            }
            t.count(&format!("{side}.morphisms"), s.morphisms as u64);
            t.count(&format!("{side}.epis"), s.epis as u64);
            t.count(&format!("{side}.epis_determined"), s.epis_determined as u64);
            t.count(&format!("{side}.witness_checks"), s.witness_checks as u64);
            t.count(
                &format!("{side}.witnesses_short"),
                s.witnesses_within_short_bound as u64,
            );
            t.count(
                &format!("{side}.witnesses_long"),
                s.witnesses_within_long_bound as u64,
            );
        }
        Ok(t.finish())
    }
}

/// Tube pairs: `(J1, J1)`, `(J2, J2)` and `(J1 ⊕ J2, J2)`, cut at the bound.
pub fn tube_table_pairs(
    cat: &TubeCategory,
    bound: Option<usize>,
) -> Vec<(NilpotentPair, NilpotentPair)> {
    let top = bound.unwrap_or(2);
    let (j1, j2) = (cat.jordan(1), cat.jordan(2));
    let mut pairs = Vec::new();
    if top >= 1 {
        pairs.push((j1.clone(), j1.clone()));
    }
    if top >= 2 {
        pairs.push((j2.clone(), j2.clone()));
        pairs.push((cat.from_partition(&[2, 1]), j2));
    }
    pairs
}

/// Quiver pairs: `C` the sum of the indecomposable projectives, `Y` any
/// pool object.
pub fn quiver_table_pairs(
    cat: &QuiverCategory,
    bound: Option<usize>,
) -> Result<Vec<(Representation, Representation)>> {
    let projectives = cat.projectives();
    if projectives.is_empty() {
        return Ok(Vec::new());
    }
    let c = cat.direct_sum(&projectives).object;
    Ok(cat
        .pool(bound.unwrap_or(3))?
        .into_iter()
        .map(|y| (c.clone(), y))
        .collect())
}

fn check_tables<C: Category + ?Sized>(
    cat: &C,
    t: &mut Tally,
    pairs: Vec<(C::Object, C::Object)>,
) -> Result<()> {
    for (c, y) in pairs {
        let label = format!("C = {}, Y = {}", cat.describe(&c), cat.describe(&y));
        let bound = default_bound(cat, &cat.zero_object(), &y, &c)?;
        let subs = enumerate_submodules(&gamma_module(cat, &c, &y), cat.limits().enumeration)?;
        let table = match auslander_table(cat, &c, &y, bound) {
            Ok(table) => table,
            Err(Error::Counterexample(why)) => {
                t.check(false, || format!("{label}: {why}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        t.check(table.rows.len() == subs.len(), || {
            format!(
                "{label}: {} rows for {} submodules",
                table.rows.len(),
                subs.len()
            )
        });
        for row in &table.rows {
            t.check(row.im_hom_matches && row.verdict.is_determined(), || {
                format!("{label}: row of dimension {} fails", row.submodule.dim())
            });
        }
        t.check(table.pairwise_distinct, || {
            format!("{label}: rows not pairwise distinct")
        });
        let census = right_classes(cat, &c, &y, bound)?;
        let mut expected: Vec<_> = subs.iter().map(|h| h.carrier.clone()).collect();
        expected.sort();
        t.check(
            census.determined == subs.len() && census.determined_images == expected,
            || {
                format!(
                    "{label}: census finds {} determined classes, expected {}",
                    census.determined,
                    subs.len()
                )
            },
        );
        t.count("tables", 1);
        t.count("rows", table.rows.len() as u64);
        t.count("census_morphisms", census.morphisms_enumerated as u64);
        t.line(format!(
            "{label}: {} rows at bound {bound}; census {} morphisms, {} classes, {} determined",
            table.rows.len(),
            census.morphisms_enumerated,
            census.classes,
            census.determined
        ));
    }
    Ok(())
}

pub struct AuslanderTableSuite;

impl Suite for AuslanderTableSuite {
    fn name(&self) -> &'static str {
        "auslander-table"
    }

    fn description(&self) -> &'static str {
        "bijection tables checked row by row and against a brute-force class census"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut t = Tally::new(self.name());
        match &ctx.instance {
            Instance::Tube(cat) => check_tables(cat, &mut t, tube_table_pairs(cat, ctx.bound))?,
            Instance::Quiver(cat) => {
                check_tables(cat, &mut t, quiver_table_pairs(cat, ctx.bound)?)?
            }
        }
        Ok(t.finish())
    }
}

/// Smallest bound at which the pool is exhaustive, if one exists up to `cap`.
fn exhaustive_bound<C: Category + ?Sized>(cat: &C, cap: usize) -> Option<usize> {
    (0..=cap).find(|&b| cat.pool_is_exhaustive(b))
}

pub struct DualizingContrastSuite;

impl Suite for DualizingContrastSuite {
    fn name(&self) -> &'static str {
        "dualizing-contrast"
    }

    fn description(&self) -> &'static str {
        "quiver: every morphism has a short determiner; tube: zero maps onto J(1) have none"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut t = Tally::new(self.name());
        match &ctx.instance {
            Instance::Quiver(cat) => {
                // Candidates have total length up to the bound.
                let max_len = ctx.bound_or(3);
                let objs = cat.pool(max_len)?;
                let candidates = determiner_candidates(cat, max_len)?;
                let test_bound = exhaustive_bound(cat, 16);
                let mut exact = 0;
                for x in &objs {
                    for y in &objs {
                        for alpha in cat.enumerate_hom(x, y)? {
                            let fan = Fan::single(cat, &alpha);
                            let b = match test_bound {
                                Some(b) => b,
                                None => cat.length(x) + cat.length(y) + 4,
                            };
                            let found = minimal_determiner(cat, &fan, max_len, b)?;
                            if let Some((_, r)) = &found {
                                exact += (r.verdict == Verdict::Determined) as u64;
                            }
                            t.check(found.is_some(), || {
                                format!(
                                    "no determiner of length <= {max_len} for a morphism {} -> {}",
                                    cat.describe(x),
                                    cat.describe(y)
                                )
                            });
                        }
                    }
                }
                t.count("candidates", candidates.len() as u64);
                t.count("exact_verdicts", exact);
                t.line(format!(
                    "{} morphisms between {} indecomposables, {} candidates, {exact} exact verdicts",
                    t.checks,
                    objs.len(),
                    candidates.len()
                ));
            }
            Instance::Tube(cat) => {
                let top = ctx.bound_or(3);
                let candidates = determiner_candidates(cat, 3)?;
                let j1 = cat.jordan(1);
                let sources: Vec<_> = std::iter::once(cat.zero_object())
                    .chain((1..=top).map(|l| cat.jordan(l)))
                    .collect();
                for x in &sources {
                    let fan = Fan::single(cat, &cat.zero_morphism(x, &j1));
                    for c in &candidates {
                        let b = default_bound(cat, x, &j1, c)?;
                        let r = is_right_determined(cat, &fan, c, b)?;
                        t.check(!r.is_determined(), || {
                            format!(
                                "zero map {} -> J(1) is determined by {}",
                                cat.describe(x),
                                cat.describe(c)
                            )
                        });
                    }
                }
                t.line(format!(
                    "zero maps onto J(1) from {} sources fail against all {} candidates",
                    sources.len(),
                    candidates.len()
                ));
            }
        }
        Ok(t.finish())
    }
}

pub struct AlmostSplitSuite;

impl Suite for AlmostSplitSuite {
    fn name(&self) -> &'static str {
        "almost-split"
    }

    fn description(&self) -> &'static str {
        "almost split sequences pass the definitional check"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut t = Tally::new(self.name());
        match &ctx.instance {
            Instance::Quiver(cat) => {
                let bound = ctx.bound_or(3);
                for y in cat.pool(bound)? {
                    if cat.is_projective(&y)? {
                        t.count("projective_skipped", 1);
                        continue;
                    }
                    match almost_split_ending_at(cat, &y, Some(bound)) {
                        Ok(s) => {
                            t.check(s.certificate.holds, || {
                                format!("sequence ending at {} fails", cat.describe(&y))
                            });
                            t.line(format!(
                                "0 -> {} -> {} -> {} -> 0 ({} lifts checked)",
                                cat.describe(s.left()),
                                cat.describe(s.middle()),
                                cat.describe(s.right()),
                                s.certificate.morphisms_checked
                            ));
                        }
                        Err(Error::Counterexample(why)) => {
                            t.check(false, || why);
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            Instance::Tube(cat) => {
                for l in 1..=ctx.bound_or(3) {
                    let seq = cat.almost_split_sequence(l)?;
                    let cert = almost_split_check(cat, &seq, l + 2)?;
                    t.check(cert.holds, || {
                        format!(
                            "sequence ending at J({l}) fails: {}",
                            cert.failure.clone().unwrap_or_default()
                        )
                    });
                    t.line(format!(
                        "0 -> J({l}) -> {} -> J({l}) -> 0 at bound {} ({} lifts checked)",
                        cat.describe(&cat.target(&seq.inclusion)),
                        l + 2,
                        cert.morphisms_checked
                    ));
                }
            }
        }
        Ok(t.finish())
    }
}

pub struct ProjTrivialSuite;

impl Suite for ProjTrivialSuite {
    fn name(&self) -> &'static str {
        "proj-trivial"
    }

    fn description(&self) -> &'static str {
        "Ext¹(f, −) vanishes exactly for zero maps (tube) or maps through projectives (quiver)"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut t = Tally::new(self.name());
        let bound = ctx.bound_or(3);
        let check_bound = match &ctx.instance {
            Instance::Tube(_) => bound + 1,
            Instance::Quiver(_) => bound,
        };
        let mut trivial = 0;
        match &ctx.instance {
            Instance::Tube(cat) => {
                let objs = cat.enumerate_objects(bound)?;
                for x in &objs {
                    for y in &objs {
                        for f in cat.enumerate_hom(x, y)? {
                            let r = projectively_trivial_check(cat, &f, check_bound)?;
                            trivial += r.trivial as u64;
                            t.check(r.trivial == cat.is_zero(&f), || {
                                format!(
                                    "{} -> {}: trivial = {}, zero = {}",
                                    cat.describe(x),
                                    cat.describe(y),
                                    r.trivial,
                                    cat.is_zero(&f)
                                )
                            });
                        }
                    }
                }
            }
            Instance::Quiver(cat) => {
                let objs = cat.pool(bound)?;
                for x in &objs {
                    for y in &objs {
                        let cover = cat.projective_cover(y)?.cover;
                        let through = Fan::single(cat, &cover);
                        for f in cat.enumerate_hom(x, y)? {
                            let r = projectively_trivial_check(cat, &f, check_bound)?;
                            trivial += r.trivial as u64;
                            let expected = factors_through(cat, &f, &through).is_some();
                            t.check(r.trivial == expected, || {
                                format!(
                                    "{} -> {}: trivial = {}, factors through a projective = {expected}",
                                    cat.describe(x),
                                    cat.describe(y),
                                    r.trivial
                                )
                            });
                        }
                    }
                }
            }
        }
        t.count("trivial", trivial);
        t.line(format!(
            "{} morphisms at check bound {check_bound}, {trivial} projectively trivial",
            t.checks
        ));
        Ok(t.finish())
    }
}

pub struct ArDualitySuite;

impl Suite for ArDualitySuite {
    fn name(&self) -> &'static str {
        "ar-duality"
    }

    fn description(&self) -> &'static str {
        "dim Ext¹(X,Y) = dim Hom(Y,τX) modulo maps through injectives; τ and τ⁻¹ are mutually inverse"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut t = Tally::new(self.name());
        let bound = ctx.bound_or(3);
        match &ctx.instance {
            Instance::Quiver(cat) => {
                let objs = cat.pool(bound)?;
                for x in &objs {
                    let tx = cat.tau(x)?;
                    for y in &objs {
                        let env = cat.injective_envelope(y)?;
                        let through = injective_part(cat, &env, &tx);
                        let lhs = cat.ext_dim(x, y);
                        let rhs = cat.hom_dim(y, &tx) - through;
                        t.check(lhs == rhs, || {
                            format!(
                                "dim Ext¹({}, {}) = {lhs}, stable Hom has dimension {rhs}",
                                cat.describe(x),
                                cat.describe(y)
                            )
                        });
                    }
                    if !cat.is_projective(x)? {
                        let back = cat.tau_inverse(&tx)?;
                        t.check(cat.iso_test(&back, x)?.is_some(), || {
                            format!("τ⁻¹τ {} is not {0}", cat.describe(x))
                        });
                    }
                    if !cat.is_injective(x)? {
                        let back = cat.tau(&cat.tau_inverse(x)?)?;
                        t.check(cat.iso_test(&back, x)?.is_some(), || {
                            format!("ττ⁻¹ {} is not {0}", cat.describe(x))
                        });
                    }
                }
                t.line(format!(
                    "{} indecomposables of length <= {bound}",
                    objs.len()
                ));
            }
            Instance::Tube(cat) => {
                let objs = cat.enumerate_objects(bound)?;
                for x in &objs {
                    let tx = cat.tau(x)?;
                    t.check(cat.iso_test(&tx, x)?.is_some(), || {
                        format!("τ {} is not {0}", cat.describe(x))
                    });
                    for y in &objs {
                        t.check(cat.ext_dim(x, y) == cat.hom_dim(y, &tx), || {
                            format!(
                                "dim Ext¹({}, {}) differs from dim Hom",
                                cat.describe(x),
                                cat.describe(y)
                            )
                        });
                    }
                }
                t.line(format!("{} objects of length <= {bound}", objs.len()));
            }
        }
        Ok(t.finish())
    }
}

/// Dimension of the maps `Y -> Z` that factor through the injective
/// envelope `ι: Y -> I`, i.e. of `{g ∘ ι}`.
fn injective_part(cat: &QuiverCategory, env: &RepMorphism, z: &Representation) -> usize {
    let op = Opposite(cat);
    image_of_hom(&op, z, &Fan::single(&op, env)).dim()
}

pub struct InfraSuite;

impl Suite for InfraSuite {
    fn name(&self) -> &'static str {
        "infra"
    }

    fn description(&self) -> &'static str {
        "rank-nullity, rref idempotence, decompose/direct_sum round trip on the instance"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut t = Tally::new(self.name());
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        dispatch!(&ctx.instance, cat => {
            let objs = cat.pool(ctx.bound_or(3))?;
            for x in &objs {
                for y in &objs {
                    let m = random_matrix(&mut rng, cat.field(), cat.length(y), cat.length(x));
                    linear_algebra_checks(&mut t, &m);
                    round_trip(cat, &mut t, &[x.clone(), y.clone()])?;
                }
            }
            t.line(format!("{} pool objects, {} pairs", objs.len(), objs.len() * objs.len()));
        });
        Ok(t.finish())
    }
}

pub(crate) fn random_matrix(rng: &mut impl Rng, field: Field, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| rng.gen_range(0..field.modulus()))
        .collect();
    Matrix::new(field, rows, cols, data).expect("shape matches")
}

fn linear_algebra_checks(t: &mut Tally, m: &Matrix) {
    let r = m.rref();
    t.check(r.rank + m.kernel_basis().dim() == m.cols(), || {
        format!("rank-nullity fails for {m:?}")
    });
    t.check(r.matrix.rref() == r, || {
        format!("rref is not idempotent on {m:?}")
    });
    t.check(m.transpose().rank() == r.rank, || {
        format!("row and column rank differ for {m:?}")
    });
}

/// `decompose(X_1 ⊕ ... ⊕ X_n)` recovers the parts up to isomorphism and its
/// idempotents sum to the identity.
fn round_trip<C: Category + ?Sized>(cat: &C, t: &mut Tally, parts: &[C::Object]) -> Result<()> {
    let sum = cat.direct_sum(parts);
    let summands = cat.decompose(&sum.object)?;
    let mut expected: Vec<C::Object> = Vec::new();
    for p in parts {
        expected.extend(cat.decompose(p)?.into_iter().map(|s| s.object));
    }
    let mut matched = vec![false; expected.len()];
    let mut ok = summands.len() == expected.len();
    for s in &summands {
        let mut hit = false;
        for (i, e) in expected.iter().enumerate() {
            if !matched[i] && cat.iso_test(&s.object, e)?.is_some() {
                matched[i] = true;
                hit = true;
                break;
            }
        }
        ok &= hit;
    }
    let id = cat.identity(&sum.object);
    let total = summands
        .iter()
        .fold(cat.zero_morphism(&sum.object, &sum.object), |acc, s| {
            cat.add(&acc, &cat.compose(&s.inclusion, &s.projection))
        });
    let names: Vec<String> = parts.iter().map(|p| cat.describe(p)).collect();
    t.check(ok, || {
        format!(
            "decompose does not recover the parts of {}",
            names.join(" + ")
        )
    });
    t.check(cat.flatten(&total) == cat.flatten(&id), || {
        format!(
            "summand idempotents of {} do not sum to the identity",
            names.join(" + ")
        )
    });
    Ok(())
}
