use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::Category;
use crate::determined::{
    auslander_table, im_hom, is_right_determined, materialize, represent_pair, right_equivalent,
    Fan,
};
use crate::error::Result;
use crate::linalg::Subspace;
use crate::suites::builtin::{default_bound, quiver_table_pairs, random_matrix};
use crate::suites::{Instance, Suite, SuiteContext, SuiteOutcome, Tally};

/// Random pairs of `C`-determined morphisms: right equivalent exactly when
/// `Im Hom(C, -)` agrees.
pub struct RightEquivalenceSuite {
    pub pairs: usize,
}

impl Default for RightEquivalenceSuite {
    fn default() -> Self {
        RightEquivalenceSuite { pairs: 200 }
    }
}

/// Determined morphisms into one `Y`, grouped by their submodule.
struct Setup<O, M> {
    c: O,
    bound: usize,
    /// Per submodule: the raw representer and its minimized form.
    rows: Vec<(Subspace, Vec<Fan<O, M>>)>,
}

impl Suite for RightEquivalenceSuite {
    fn name(&self) -> &'static str {
        "right-equivalence"
    }

    fn description(&self) -> &'static str {
        "random pairs of determined morphisms: right equivalent iff equal Im Hom(C, -)"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut t = Tally::new(self.name());
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        match &ctx.instance {
            Instance::Tube(cat) => {
                let top = ctx.bound.unwrap_or(2);
                let mut pairs = Vec::new();
                for c in cat.enumerate_objects(top)? {
                    for y in cat.enumerate_objects(top)? {
                        pairs.push((c.clone(), y));
                    }
                }
                let setups = build(cat, pairs)?;
                sample(cat, &setups, self.pairs, &mut rng, &mut t)?;
            }
            Instance::Quiver(cat) => {
                let mut pairs = quiver_table_pairs(cat, ctx.bound)?;
                let pool = cat.pool(ctx.bound.unwrap_or(3))?;
                for c in &pool {
                    for y in &pool {
                        pairs.push((c.clone(), y.clone()));
                    }
                }
                let setups = build(cat, pairs)?;
                sample(cat, &setups, self.pairs, &mut rng, &mut t)?;
            }
        }
        Ok(t.finish())
    }
}

fn build<C: Category + ?Sized>(
    cat: &C,
    pairs: Vec<(C::Object, C::Object)>,
) -> Result<Vec<Setup<C::Object, C::Morphism>>> {
    let mut setups = Vec::new();
    for (c, y) in pairs {
        let bound = default_bound(cat, &cat.zero_object(), &y, &c)?;
        let table = auslander_table(cat, &c, &y, bound)?;
        let rows = table
            .rows
            .into_iter()
            .map(|row| {
                let raw = represent_pair(cat, &c, &y, &row.submodule, bound)?;
                Ok((row.submodule, vec![raw, row.representative]))
            })
            .collect::<Result<Vec<_>>>()?;
        setups.push(Setup { c, bound, rows });
    }
    Ok(setups)
}

/// A random member of the class of `base`: padded by a component through
/// it, or precomposed with a split epi.
fn variant<C: Category + ?Sized>(
    cat: &C,
    base: &Fan<C::Object, C::Morphism>,
    bound: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Fan<C::Object, C::Morphism>> {
    let alpha = materialize(cat, base);
    let x = cat.source(&alpha);
    let pool = cat.pool(bound)?;
    if pool.is_empty() {
        return Ok(base.clone());
    }
    let t_obj = &pool[rng.gen_range(0..pool.len())];
    Ok(match rng.gen_range(0..3) {
        0 => base.clone(),
        1 => {
            let space = cat.hom_space(t_obj, &x);
            let coords = random_matrix(rng, cat.field(), 1, space.dim())
                .row(0)
                .to_vec();
            let g = cat.unflatten(t_obj, &x, &space.combine(&coords));
            let mut padded = base.clone();
            padded.components.push(cat.compose(&alpha, &g));
            padded
        }
        _ => {
            let sum = cat.direct_sum(&[x.clone(), t_obj.clone()]);
            Fan::single(cat, &cat.compose(&alpha, &sum.projections[0]))
        }
    })
}

fn sample<C: Category + ?Sized>(
    cat: &C,
    setups: &[Setup<C::Object, C::Morphism>],
    pairs: usize,
    rng: &mut ChaCha8Rng,
    t: &mut Tally,
) -> Result<()> {
    let setups: Vec<_> = setups.iter().filter(|s| !s.rows.is_empty()).collect();
    if setups.is_empty() {
        return Ok(());
    }
    let (mut equal, mut equivalent) = (0, 0);
    for _ in 0..pairs {
        let s = setups[rng.gen_range(0..setups.len())];
        let i = rng.gen_range(0..s.rows.len());
        let j = if rng.gen_bool(0.5) {
            i
        } else {
            rng.gen_range(0..s.rows.len())
        };
        let pick = |k: usize, rng: &mut ChaCha8Rng| -> Result<Fan<C::Object, C::Morphism>> {
            let forms = &s.rows[k].1;
            variant(cat, &forms[rng.gen_range(0..forms.len())], s.bound, rng)
        };
        let a1 = pick(i, rng)?;
        let a2 = pick(j, rng)?;
        let d1 = is_right_determined(cat, &a1, &s.c, s.bound)?.is_determined();
        let d2 = is_right_determined(cat, &a2, &s.c, s.bound)?.is_determined();
        t.check(d1 && d2, || {
            format!(
                "sampled morphism into {} not determined",
                cat.describe(&a1.target)
            )
        });
        let same_image = im_hom(cat, &s.c, &a1) == im_hom(cat, &s.c, &a2);
        let eq = right_equivalent(cat, &a1, &a2);
        equal += same_image as u64;
        equivalent += eq as u64;
        t.check(eq == same_image, || {
            format!(
                "C = {}, Y = {}: right equivalent = {eq}, equal images = {same_image}",
                cat.describe(&s.c),
                cat.describe(&a1.target)
            )
        });
    }
    t.count("pairs", pairs as u64);
    t.count("equal_images", equal);
    t.count("equivalent", equivalent);
    t.line(format!(
        "{pairs} pairs over {} (C, Y) setups: {equal} with equal images, {equivalent} right equivalent",
        setups.len()
    ));
    Ok(())
}
