use crate::category::Category;
use crate::error::Result;
use crate::linalg::{Matrix, Subspace};
use crate::quiver::{QuiverCategory, RepMorphism, Representation};

fn position(paths: &[Vec<usize>], p: &[usize]) -> Option<usize> {
    paths.iter().position(|q| q.as_slice() == p)
}

fn unit(n: usize, j: usize) -> Vec<u64> {
    let mut e = vec![0; n];
    e[j] = 1;
    e
}

/// `⊕_k P(tops[k])`, with the basis of `P(i)` at `j` given by the paths
/// `i -> j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveSum {
    pub tops: Vec<usize>,
    pub object: Representation,
}

/// `⊕_k I(tops[k])`, with the basis of `I(i)` at `j` dual to the paths
/// `j -> i`.
#[derive(Clone, Debug, PartialEq)]
pub struct InjectiveSum {
    pub tops: Vec<usize>,
    pub object: Representation,
}

/// A minimal presentation `P₁ --d--> P₀ --cover--> M -> 0`. Over a path
/// algebra `d` is injective.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    pub p1: ProjectiveSum,
    pub p0: ProjectiveSum,
    pub d: RepMorphism,
    pub cover: RepMorphism,
}

impl QuiverCategory {
    pub fn simples(&self) -> Vec<Representation> {
        (0..self.quiver().vertex_count())
            .map(|v| self.simple(v))
            .collect()
    }

    pub fn projective_sum(&self, tops: &[usize]) -> ProjectiveSum {
        let q = self.quiver();
        let n = q.vertex_count();
        let paths: Vec<Vec<Vec<Vec<usize>>>> = tops
            .iter()
            .map(|&i| (0..n).map(|j| q.paths_between(i, j)).collect())
            .collect();
        let dims: Vec<usize> = (0..n)
            .map(|j| paths.iter().map(|p| p[j].len()).sum())
            .collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let blocks: Vec<Matrix> = paths
                    .iter()
                    .map(|p| {
                        let (from, to) = (&p[a.source], &p[a.target]);
                        let mut m = Matrix::zeros(self.field(), to.len(), from.len());
                        for (c, path) in from.iter().enumerate() {
                            let mut longer = path.clone();
                            longer.push(ai);
                            let r = position(to, &longer).expect("extended path is listed");
                            m.set(r, c, 1);
                        }
                        m
                    })
                    .collect();
                Matrix::block_diag(self.field(), &blocks)
            })
            .collect();
        let object = self
            .representation(dims, maps)
            .expect("path spaces form a representation");
        ProjectiveSum {
            tops: tops.to_vec(),
            object,
        }
    }

    pub fn injective_sum(&self, tops: &[usize]) -> InjectiveSum {
        let q = self.quiver();
        let n = q.vertex_count();
        let paths: Vec<Vec<Vec<Vec<usize>>>> = tops
            .iter()
            .map(|&i| (0..n).map(|j| q.paths_between(j, i)).collect())
            .collect();
        let dims: Vec<usize> = (0..n)
            .map(|j| paths.iter().map(|p| p[j].len()).sum())
            .collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let blocks: Vec<Matrix> = paths
                    .iter()
                    .map(|p| {
                        let (from, to) = (&p[a.source], &p[a.target]);
                        let mut m = Matrix::zeros(self.field(), to.len(), from.len());
                        for (c, path) in from.iter().enumerate() {
                            if path.first() == Some(&ai) {
                                let r = position(to, &path[1..]).expect("shorter path is listed");
                                m.set(r, c, 1);
                            }
                        }
                        m
                    })
                    .collect();
                Matrix::block_diag(self.field(), &blocks)
            })
            .collect();
        let object = self
            .representation(dims, maps)
            .expect("dual path spaces form a representation");
        InjectiveSum {
            tops: tops.to_vec(),
            object,
        }
    }

    /// Indecomposable projectives, one per vertex in vertex order.
    pub fn projectives(&self) -> Vec<Representation> {
        (0..self.quiver().vertex_count())
            .map(|v| self.projective_sum(&[v]).object)
            .collect()
    }

    /// Indecomposable injectives, one per vertex in vertex order.
    pub fn injectives(&self) -> Vec<Representation> {
        (0..self.quiver().vertex_count())
            .map(|v| self.injective_sum(&[v]).object)
            .collect()
    }

    /// The map `⊕ P(tops[k]) -> m` sending the trivial path of summand `k`
    /// to `xs[k] ∈ m_{tops[k]}`.
    pub fn map_from_projective(
        &self,
        p: &ProjectiveSum,
        m: &Representation,
        xs: &[Vec<u64>],
    ) -> RepMorphism {
        let q = self.quiver();
        let n = q.vertex_count();
        let maps = (0..n)
            .map(|j| {
                let mut cols = Vec::new();
                for (&i, x) in p.tops.iter().zip(xs) {
                    for path in q.paths_between(i, j) {
                        cols.push(m.path_map(i, &path).mul_vec(x));
                    }
                }
                Matrix::from_columns(self.field(), m.dim_at(j), &cols)
            })
            .collect();
        RepMorphism::new(p.object.clone(), m.clone(), maps).expect("path images commute")
    }

    /// Vertices and vectors lifting a basis of the top `m / rad m`.
    fn top_generators(&self, m: &Representation) -> (Vec<usize>, Vec<Vec<u64>>) {
        let mut tops = Vec::new();
        let mut xs = Vec::new();
        for v in 0..self.quiver().vertex_count() {
            let d = m.dim_at(v);
            let mut rad = Subspace::zero(self.field(), d);
            for (ai, _) in self.quiver().arrows_into(v) {
                rad = rad.sum(&m.map(ai).image_basis()).expect("same ambient");
            }
            for j in rad.free_positions() {
                tops.push(v);
                xs.push(unit(d, j));
            }
        }
        (tops, xs)
    }

    /// Projective cover built on a basis of the top, hence minimal.
    pub fn projective_cover(&self, m: &Representation) -> Result<ProjectivePresentation> {
        self.check_object(m)?;
        let (tops0, xs0) = self.top_generators(m);
        let p0 = self.projective_sum(&tops0);
        let cover = self.map_from_projective(&p0, m, &xs0);
        let syzygy = self.kernel(&cover);
        let omega = syzygy.source().clone();
        let (tops1, xs1) = self.top_generators(&omega);
        let p1 = self.projective_sum(&tops1);
        let onto = self.map_from_projective(&p1, &omega, &xs1);
        debug_assert!(
            self.is_iso(&onto),
            "submodules of projectives are projective"
        );
        let d = self.compose(&syzygy, &onto);
        Ok(ProjectivePresentation { p1, p0, d, cover })
    }

    pub fn is_projective(&self, m: &Representation) -> Result<bool> {
        Ok(self.projective_cover(m)?.p1.tops.is_empty())
    }

    pub fn is_injective(&self, m: &Representation) -> Result<bool> {
        let op = self.opposite();
        op.is_projective(&m.dual())
    }

    /// The same category over the opposite quiver.
    pub fn opposite(&self) -> QuiverCategory {
        QuiverCategory::new(self.field(), self.quiver().opposite()).with_limits(self.limits())
    }

    /// Rebuild a representation of an equal quiver on this category's quiver.
    pub(crate) fn adopt(&self, m: &Representation) -> Representation {
        self.representation(m.dims().to_vec(), m.maps().to_vec())
            .expect("same quiver up to identity")
    }

    pub(crate) fn adopt_morphism(&self, f: &RepMorphism) -> RepMorphism {
        RepMorphism::new(
            self.adopt(f.source()),
            self.adopt(f.target()),
            f.maps().to_vec(),
        )
        .expect("same quiver up to identity")
    }

    /// Coefficients of a map between projective sums on paths: entry
    /// `[r][c][w]` is the coefficient of the path `w: tops_target[r] ->
    /// tops_source[c]` in the image of the generator of source summand `c`.
    fn path_coefficients(
        &self,
        f: &RepMorphism,
        src: &ProjectiveSum,
        tgt: &ProjectiveSum,
    ) -> Vec<Vec<Vec<u64>>> {
        let q = self.quiver();
        let mut out = vec![vec![Vec::new(); src.tops.len()]; tgt.tops.len()];
        for (c, &i) in src.tops.iter().enumerate() {
            // The generator of summand c follows the paths of the earlier
            // summands that end at i.
            let offset: usize = src.tops[..c]
                .iter()
                .map(|&k| q.paths_between(k, i).len())
                .sum();
            let image = f.map_at(i).column(offset);
            let mut off = 0;
            for (r, &j) in tgt.tops.iter().enumerate() {
                let len = q.paths_between(j, i).len();
                out[r][c] = image[off..off + len].to_vec();
                off += len;
            }
        }
        out
    }

    /// `ν d` for a map `d` between projective sums: the induced map between
    /// the injective sums with the same tops.
    fn nakayama(
        &self,
        d: &RepMorphism,
        src: &ProjectiveSum,
        tgt: &ProjectiveSum,
    ) -> Result<RepMorphism> {
        let q = self.quiver();
        let field = self.field();
        let w = self.path_coefficients(d, src, tgt);
        let isrc = self.injective_sum(&src.tops);
        let itgt = self.injective_sum(&tgt.tops);
        let n = q.vertex_count();
        let mut maps = Vec::with_capacity(n);
        for k in 0..n {
            let mut m = Matrix::zeros(field, itgt.object.dim_at(k), isrc.object.dim_at(k));
            let mut row0 = 0;
            for (r, &j) in tgt.tops.iter().enumerate() {
                let us = q.paths_between(k, j);
                let mut col0 = 0;
                for (c, &i) in src.tops.iter().enumerate() {
                    let ss = q.paths_between(k, i);
                    let ws = q.paths_between(j, i);
                    for (ui, u) in us.iter().enumerate() {
                        for (wi, wpath) in ws.iter().enumerate() {
                            let coeff = w[r][c][wi];
                            if coeff == 0 {
                                continue;
                            }
                            let mut s = u.clone();
                            s.extend(wpath);
                            let si = position(&ss, &s).expect("concatenated path is listed");
                            let cur = m.get(row0 + ui, col0 + si);
                            m.set(row0 + ui, col0 + si, field.add(cur, coeff));
                        }
                    }
                    col0 += ss.len();
                }
                row0 += us.len();
            }
            maps.push(m);
        }
        RepMorphism::new(isrc.object, itgt.object, maps)
    }

    /// Mono `m -> I` into a minimal injective envelope, by duality from the
    /// projective cover over the opposite quiver.
    pub fn injective_envelope(&self, m: &Representation) -> Result<RepMorphism> {
        self.check_object(m)?;
        let op = self.opposite();
        let pres = op.projective_cover(&m.dual())?;
        Ok(self.adopt_morphism(&pres.cover.dual()))
    }

    /// `τ m = D Tr m`, computed as the kernel of `ν d` for a minimal
    /// presentation `d`.
    pub fn tau_of(&self, m: &Representation) -> Result<Representation> {
        self.check_object(m)?;
        let pres = self.projective_cover(m)?;
        let nu = self.nakayama(&pres.d, &pres.p1, &pres.p0)?;
        Ok(self.kernel(&nu).source().clone())
    }

    /// `τ⁻¹ m = D τ_{Q^op} D m`.
    pub fn tau_inverse_of(&self, m: &Representation) -> Result<Representation> {
        self.check_object(m)?;
        let op = self.opposite();
        let t = op.tau_of(&m.dual())?;
        Ok(self.adopt(&t.dual()))
    }
}
