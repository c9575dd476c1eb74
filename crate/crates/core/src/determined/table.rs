use crate::category::Category;
use crate::determined::{
    enumerate_submodules, fan_is_epi, gamma_module, im_hom, is_right_determined, represent_pair,
    right_equivalent, right_minimize, DeterminedReport, Fan,
};
use crate::error::{Error, Result};
use crate::linalg::Subspace;

#[derive(Clone, Debug)]
pub struct TableRow<O, M> {
    pub submodule: Subspace,
    /// Right-minimal representer of the pair `(C, H)`.
    pub representative: Fan<O, M>,
    pub minimal_certified: bool,
    pub im_hom_matches: bool,
    pub verdict: DeterminedReport<O, M>,
    pub is_epi: bool,
}

/// The map from right `C`-determined classes into `Y` to submodules of
/// `Hom(C, Y)`, tabulated from the submodule side.
#[derive(Clone, Debug)]
pub struct BijectionTable<O, M> {
    pub c: O,
    pub y: O,
    pub bound: usize,
    pub rows: Vec<TableRow<O, M>>,
    pub pairwise_distinct: bool,
}

impl<O, M> BijectionTable<O, M> {
    pub fn all_rows_pass(&self) -> bool {
        self.pairwise_distinct
            && self
                .rows
                .iter()
                .all(|r| r.im_hom_matches && r.verdict.is_determined())
    }
}

/// For each submodule `H`, builds the representer, minimizes it and checks
/// `Im Hom(C, α) = H` and right determinedness; then checks that the rows
/// are pairwise inequivalent. A failed check is reported as a
/// counterexample.
pub fn auslander_table<C: Category + ?Sized>(
    cat: &C,
    c: &C::Object,
    y: &C::Object,
    bound: usize,
) -> Result<BijectionTable<C::Object, C::Morphism>> {
    let module = gamma_module(cat, c, y);
    let subs = enumerate_submodules(&module, cat.limits().enumeration)?;
    let mut rows = Vec::with_capacity(subs.len());
    for h in subs {
        let raw = represent_pair(cat, c, y, &h.carrier, bound)?;
        let minimized = right_minimize(cat, &raw)?;
        let im = im_hom(cat, c, &minimized.fan);
        let verdict = is_right_determined(cat, &minimized.fan, c, bound)?;
        let row = TableRow {
            im_hom_matches: im == h.carrier,
            is_epi: fan_is_epi(cat, &minimized.fan),
            submodule: h.carrier,
            representative: minimized.fan,
            minimal_certified: minimized.certified,
            verdict,
        };
        if !row.im_hom_matches {
            return Err(Error::Counterexample(format!(
                "representer of a submodule of dimension {} has image of dimension {}",
                row.submodule.dim(),
                im.dim()
            )));
        }
        if !row.verdict.is_determined() {
            return Err(Error::Counterexample(format!(
                "representer of a submodule of dimension {} is not right {}-determined",
                row.submodule.dim(),
                cat.describe(c)
            )));
        }
        rows.push(row);
    }
    let mut pairwise_distinct = true;
    for i in 0..rows.len() {
        for j in 0..i {
            if right_equivalent(cat, &rows[i].representative, &rows[j].representative) {
                pairwise_distinct = false;
            }
        }
    }
    if !pairwise_distinct {
        return Err(Error::Counterexample(
            "two table rows are right equivalent".into(),
        ));
    }
    Ok(BijectionTable {
        c: c.clone(),
        y: y.clone(),
        bound,
        rows,
        pairwise_distinct,
    })
}
