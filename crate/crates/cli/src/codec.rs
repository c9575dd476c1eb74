//! Instance loading and JSON encoding of objects and morphisms.

use std::collections::BTreeMap;

use detmor_core::linalg::{Field, Matrix};
use detmor_core::quiver::{Arrow, Quiver, QuiverCategory, RepMorphism, Representation};
use detmor_core::tube::{NilpotentPair, TubeCategory, TubeMorphism};
use detmor_core::{Category, Limits};
use serde_json::{json, Value};

use crate::spec::{locate, InstanceSpec, Kind, MatrixSpec, MorphismSpec, ObjectSpec};
use crate::CliError;

/// What the command layer needs from a category beyond [`Category`].
pub trait Codec: Category {
    fn object_from_spec(&self, spec: &ObjectSpec) -> Result<Self::Object, String>;
    fn morphism_from_spec(
        &self,
        x: &Self::Object,
        y: &Self::Object,
        spec: &MorphismSpec,
    ) -> Result<Self::Morphism, String>;
    /// Objects that need no definition, such as `J3` or `S1`.
    fn builtin_object(&self, name: &str) -> Option<Self::Object>;
    fn object_json(&self, x: &Self::Object) -> Value;
    fn morphism_json(&self, f: &Self::Morphism) -> Value;
}

pub fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_rows())
}

fn parse_matrix(field: Field, rows: usize, cols: usize, m: &MatrixSpec) -> Result<Matrix, String> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        let got_cols = m.first().map_or(0, Vec::len);
        return Err(format!(
            "expected a {rows}x{cols} matrix, got {}x{got_cols}",
            m.len()
        ));
    }
    let data = m.iter().flatten().map(|&v| field.reduce(v)).collect();
    Matrix::new(field, rows, cols, data).map_err(|e| e.to_string())
}

impl Codec for QuiverCategory {
    fn object_from_spec(&self, spec: &ObjectSpec) -> Result<Representation, String> {
        if spec.partition.is_some() || spec.operator.is_some() {
            return Err("quiver objects take dims and maps".into());
        }
        let dims = spec.dims.clone().ok_or("missing dims")?;
        let q = self.quiver();
        if dims.len() != q.vertex_count() {
            return Err(format!(
                "{} dims for {} vertices",
                dims.len(),
                q.vertex_count()
            ));
        }
        let given = spec.maps.clone().unwrap_or_default();
        if let Some(name) = given.keys().find(|k| q.arrow_index(k).is_none()) {
            return Err(format!("unknown arrow {name}"));
        }
        let mut maps = Vec::new();
        for a in q.arrows() {
            let (r, c) = (dims[a.target], dims[a.source]);
            maps.push(match given.get(&a.name) {
                Some(m) => parse_matrix(self.field(), r, c, m)
                    .map_err(|e| format!("arrow {}: {e}", a.name))?,
                None if r == 0 || c == 0 => Matrix::zeros(self.field(), r, c),
                None => return Err(format!("missing matrix for arrow {}", a.name)),
            });
        }
        self.representation(dims, maps).map_err(|e| e.to_string())
    }

    fn morphism_from_spec(
        &self,
        x: &Representation,
        y: &Representation,
        spec: &MorphismSpec,
    ) -> Result<RepMorphism, String> {
        if spec.matrix.is_some() {
            return Err("quiver morphisms take maps keyed by vertex".into());
        }
        let q = self.quiver();
        let given = spec.maps.clone().unwrap_or_default();
        if let Some(name) = given.keys().find(|k| q.vertex_index(k).is_none()) {
            return Err(format!("unknown vertex {name}"));
        }
        let mut maps = Vec::new();
        for (v, name) in q.vertices().iter().enumerate() {
            let (r, c) = (y.dim_at(v), x.dim_at(v));
            maps.push(match given.get(name) {
                Some(m) => parse_matrix(self.field(), r, c, m)
                    .map_err(|e| format!("vertex {name}: {e}"))?,
                None if r == 0 || c == 0 => Matrix::zeros(self.field(), r, c),
                None => return Err(format!("missing matrix at vertex {name}")),
            });
        }
        RepMorphism::new(x.clone(), y.clone(), maps).map_err(|e| e.to_string())
    }

    fn builtin_object(&self, name: &str) -> Option<Representation> {
        if name == "0" {
            return Some(self.zero_object());
        }
        let (kind, vertex) = name.split_at(name.char_indices().nth(1)?.0);
        let v = self.quiver().vertex_index(vertex)?;
        match kind {
            "S" => Some(self.simple(v)),
            "P" => Some(self.projectives()[v].clone()),
            "I" => Some(self.injectives()[v].clone()),
            _ => None,
        }
    }

    fn object_json(&self, x: &Representation) -> Value {
        let maps: BTreeMap<&str, Value> = self
            .quiver()
            .arrows()
            .iter()
            .zip(x.maps())
            .map(|(a, m)| (a.name.as_str(), matrix_json(m)))
            .collect();
        json!({"name": self.describe(x), "dims": x.dims(), "maps": maps})
    }

    fn morphism_json(&self, f: &RepMorphism) -> Value {
        let maps: BTreeMap<&str, Value> = self
            .quiver()
            .vertices()
            .iter()
            .zip(f.maps())
            .map(|(v, m)| (v.as_str(), matrix_json(m)))
            .collect();
        json!({
            "source": self.describe(f.source()),
            "target": self.describe(f.target()),
            "maps": maps,
        })
    }
}

impl Codec for TubeCategory {
    fn object_from_spec(&self, spec: &ObjectSpec) -> Result<NilpotentPair, String> {
        if spec.dims.is_some() || spec.maps.is_some() {
            return Err("tube objects take a partition or an operator".into());
        }
        match (&spec.partition, &spec.operator) {
            (Some(p), None) => {
                if p.contains(&0) {
                    return Err("partition parts must be positive".into());
                }
                Ok(self.from_partition(p))
            }
            (None, Some(op)) => {
                let n = op.len();
                let m = parse_matrix(self.field(), n, n, op)?;
                NilpotentPair::new(m).map_err(|e| e.to_string())
            }
            _ => Err("give exactly one of partition and operator".into()),
        }
    }

    fn morphism_from_spec(
        &self,
        x: &NilpotentPair,
        y: &NilpotentPair,
        spec: &MorphismSpec,
    ) -> Result<TubeMorphism, String> {
        if spec.maps.is_some() {
            return Err("tube morphisms take a single matrix".into());
        }
        let m = match &spec.matrix {
            Some(m) => parse_matrix(self.field(), y.dim(), x.dim(), m)?,
            None if x.dim() == 0 || y.dim() == 0 => Matrix::zeros(self.field(), y.dim(), x.dim()),
            None => return Err("missing matrix".into()),
        };
        self.morphism(x, y, m).map_err(|e| e.to_string())
    }

    fn builtin_object(&self, name: &str) -> Option<NilpotentPair> {
        if name == "0" {
            return Some(self.zero_object());
        }
        let rest = name.strip_prefix('J')?;
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(rest);
        let parts: Vec<usize> = inner
            .split(',')
            .map(|s| s.trim().parse().ok().filter(|&k| k > 0))
            .collect::<Option<_>>()?;
        Some(self.from_partition(&parts))
    }

    fn object_json(&self, x: &NilpotentPair) -> Value {
        json!({
            "name": self.describe(x),
            "partition": x.partition().parts(),
            "operator": matrix_json(x.operator()),
        })
    }

    fn morphism_json(&self, f: &TubeMorphism) -> Value {
        json!({
            "source": self.describe(f.source()),
            "target": self.describe(f.target()),
            "matrix": matrix_json(f.matrix()),
        })
    }
}

/// A category with the named objects and morphisms of an instance.
pub struct World<C: Codec> {
    pub cat: C,
    pub objects: BTreeMap<String, C::Object>,
    pub morphisms: BTreeMap<String, C::Morphism>,
}

impl<C: Codec> World<C> {
    fn build(cat: C, spec: &InstanceSpec, text: Option<&str>) -> Result<Self, CliError> {
        let mut w = World {
            cat,
            objects: BTreeMap::new(),
            morphisms: BTreeMap::new(),
        };
        for (name, o) in &spec.objects {
            let x = w
                .cat
                .object_from_spec(o)
                .map_err(|e| CliError::Input(locate(text, name, format!("object {name}: {e}"))))?;
            w.objects.insert(name.clone(), x);
        }
        for (name, m) in &spec.morphisms {
            let wrap =
                |e: String| CliError::Input(locate(text, name, format!("morphism {name}: {e}")));
            let x = w.object(&m.source).map_err(|e| wrap(e.to_string()))?;
            let y = w.object(&m.target).map_err(|e| wrap(e.to_string()))?;
            let f = w.cat.morphism_from_spec(&x, &y, m).map_err(wrap)?;
            w.morphisms.insert(name.clone(), f);
        }
        Ok(w)
    }

    pub fn object(&self, name: &str) -> Result<C::Object, CliError> {
        self.objects
            .get(name)
            .cloned()
            .or_else(|| self.cat.builtin_object(name))
            .ok_or_else(|| CliError::Input(format!("unknown object {name:?}")))
    }

    /// A named morphism, or `id:X`, or `zero:X:Y`.
    pub fn morphism(&self, name: &str) -> Result<C::Morphism, CliError> {
        if let Some(f) = self.morphisms.get(name) {
            return Ok(f.clone());
        }
        let parts: Vec<&str> = name.split(':').collect();
        match parts.as_slice() {
            ["id", x] => Ok(self.cat.identity(&self.object(x)?)),
            ["zero", x, y] => Ok(self.cat.zero_morphism(&self.object(x)?, &self.object(y)?)),
            _ => Err(CliError::Input(format!("unknown morphism {name:?}"))),
        }
    }
}

pub enum Loaded {
    Quiver(World<QuiverCategory>),
    Tube(World<TubeCategory>),
}

/// Builds the instance; `text` is the source, used for line positions.
pub fn load(spec: &InstanceSpec, limits: Limits, text: Option<&str>) -> Result<Loaded, CliError> {
    let field = Field::new(spec.field_p).map_err(|e| CliError::Input(format!("field_p: {e}")))?;
    match spec.kind {
        Kind::Tube => {
            if !spec.vertices.is_empty() || !spec.arrows.is_empty() {
                return Err(CliError::Input(
                    "tube instances have no vertices or arrows".into(),
                ));
            }
            let cat = TubeCategory::new(field).with_limits(limits);
            Ok(Loaded::Tube(World::build(cat, spec, text)?))
        }
        Kind::Quiver => {
            let mut seen = std::collections::BTreeSet::new();
            if let Some(v) = spec.vertices.iter().find(|v| !seen.insert(v.as_str())) {
                return Err(CliError::Input(locate(
                    text,
                    v,
                    format!("duplicate vertex {v}"),
                )));
            }
            let mut names = std::collections::BTreeSet::new();
            if let Some(a) = spec.arrows.iter().find(|a| !names.insert(a.name.as_str())) {
                return Err(CliError::Input(locate(
                    text,
                    &a.name,
                    format!("duplicate arrow {}", a.name),
                )));
            }
            let index = |v: &str| {
                spec.vertices
                    .iter()
                    .position(|u| u == v)
                    .ok_or_else(|| CliError::Input(locate(text, v, format!("unknown vertex {v}"))))
            };
            let arrows = spec
                .arrows
                .iter()
                .map(|a| {
                    Ok(Arrow {
                        name: a.name.clone(),
                        source: index(&a.source)?,
                        target: index(&a.target)?,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let quiver = Quiver::new(spec.vertices.clone(), arrows)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let cat = QuiverCategory::new(field, quiver).with_limits(limits);
            Ok(Loaded::Quiver(World::build(cat, spec, text)?))
        }
    }
}
