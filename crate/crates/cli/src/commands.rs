use detmor_core::ar::{almost_split_check, almost_split_ending_at, AlmostSplitCertificate};
use detmor_core::determined::{
    auslander_table, enumerate_submodules, gamma_module, im_hom, is_left_determined,
    is_right_determined, represent_pair, right_minimize, DeterminedReport, Fan, Verdict,
};
use detmor_core::linalg::Subspace;
use detmor_core::suites::{default_bound, Instance, Registry, SuiteContext, DEFAULT_SEED};
use detmor_core::tube::gram_matrix;
use detmor_core::{Category, Extensions, Opposite, Translate};
use serde_json::{json, Value};

use crate::codec::{matrix_json, Codec, Loaded, World};
use crate::{CliError, Command, Options};

pub(crate) struct Response {
    pub result: Value,
    pub bounds: Value,
    pub passed: bool,
    pub tsv: Option<String>,
}

impl Response {
    fn pass(result: Value) -> Self {
        Response {
            result,
            bounds: json!({}),
            passed: true,
            tsv: None,
        }
    }

    fn bounds(mut self, bounds: Value) -> Self {
        self.bounds = bounds;
        self
    }
}

type Res = Result<Response, CliError>;

pub(crate) fn exec(loaded: &Loaded, cmd: &Command, opts: &Options) -> Res {
    match (loaded, cmd) {
        (Loaded::Quiver(w), Command::AlmostSplit { y, .. }) => {
            let y = w.object(y)?;
            let s = almost_split_ending_at(&w.cat, &y, opts.bound)?;
            Ok(almost_split_response(w, &s.sequence, &s.certificate))
        }
        (Loaded::Tube(w), Command::AlmostSplit { y, .. }) => {
            let y = w.object(y)?;
            if !w.cat.is_indecomposable(&y)? {
                return Err(CliError::Input(format!(
                    "{} is not indecomposable",
                    w.cat.describe(&y)
                )));
            }
            let l = w.cat.length(&y);
            let seq = w.cat.almost_split_sequence(l)?;
            let cert = almost_split_check(&w.cat, &seq, opts.bound.unwrap_or(l + 2))?;
            Ok(almost_split_response(w, &seq, &cert))
        }
        (Loaded::Quiver(_), Command::SerrePairing { .. }) => Err(CliError::Input(
            "serre-pairing needs a tube instance; use ext and tau for quivers".into(),
        )),
        (Loaded::Tube(w), Command::SerrePairing { x, y, .. }) => {
            let (x, y) = (w.object(x)?, w.object(y)?);
            let ext = w.cat.ext1(&x, &y);
            let homs = w.cat.hom_basis(&y, &x);
            let g = gram_matrix(&ext, &homs)?;
            let perfect = g.rows() == g.cols() && g.rank() == g.rows();
            Ok(Response {
                result: json!({
                    "ext_dim": ext.dim(),
                    "hom_dim": homs.len(),
                    "gram": matrix_json(&g),
                    "rank": g.rank(),
                    "perfect": perfect,
                }),
                bounds: json!({}),
                passed: perfect,
                tsv: None,
            })
        }
        (_, Command::Verify { suite, .. }) => verify(loaded, suite, opts),
        (Loaded::Quiver(w), _) => generic(w, cmd, opts),
        (Loaded::Tube(w), _) => generic(w, cmd, opts),
    }
}

fn almost_split_response<C: Codec>(
    w: &World<C>,
    seq: &detmor_core::ShortExact<C::Morphism>,
    cert: &AlmostSplitCertificate,
) -> Response {
    let cat = &w.cat;
    Response {
        result: json!({
            "left": cat.object_json(&cat.source(&seq.inclusion)),
            "middle": cat.object_json(&cat.target(&seq.inclusion)),
            "right": cat.object_json(&cat.target(&seq.projection)),
            "inclusion": cat.morphism_json(&seq.inclusion),
            "projection": cat.morphism_json(&seq.projection),
            "certificate": {
                "holds": cert.holds,
                "failure": cert.failure,
                "objects_checked": cert.objects_checked,
                "morphisms_checked": cert.morphisms_checked,
                "retractions_skipped": cert.retractions_skipped,
            },
        }),
        bounds: json!({"check": cert.bound, "exhaustive": cert.pool_exhaustive}),
        passed: cert.holds,
        tsv: None,
    }
}

fn verify(loaded: &Loaded, suite: &str, opts: &Options) -> Res {
    let registry = Registry::builtin();
    if suite == "list" {
        let names: Vec<Value> = registry
            .names()
            .into_iter()
            .map(|n| json!({"name": n, "description": registry.get(n).map(|s| s.description())}))
            .collect();
        return Ok(Response::pass(json!({ "suites": names })));
    }
    if registry.get(suite).is_none() {
        return Err(CliError::Input(format!(
            "unknown suite {suite:?}; known suites: {}",
            registry.names().join(", ")
        )));
    }
    let instance = match loaded {
        Loaded::Quiver(w) => Instance::Quiver(w.cat.clone()),
        Loaded::Tube(w) => Instance::Tube(w.cat.clone()),
    };
    let seed = opts.seed.unwrap_or(DEFAULT_SEED);
    let ctx = SuiteContext::new(instance)
        .with_bound(opts.bound)
        .with_seed(seed);
    let outcome = registry.run(suite, &ctx).map_err(|e| match e {
        detmor_core::Error::Unsupported(why) => CliError::Input(why),
        e => CliError::Core(e),
    })?;
    Ok(Response {
        passed: outcome.passed,
        result: serde_json::to_value(&outcome).expect("outcomes serialize"),
        bounds: json!({"bound": opts.bound, "seed": seed}),
        tsv: None,
    })
}

fn verdict_json<C: Codec>(
    cat: &C,
    r: &DeterminedReport<C::Object, C::Morphism>,
    exhaustive: bool,
) -> Value {
    let (verdict, witness) = match &r.verdict {
        Verdict::Determined => ("true", Value::Null),
        Verdict::DeterminedUpToBound => ("true-up-to-bound", Value::Null),
        Verdict::NotDetermined {
            witness_object,
            witness,
        } => (
            "false",
            json!({"object": cat.object_json(witness_object), "morphism": cat.morphism_json(witness)}),
        ),
    };
    json!({
        "verdict": verdict,
        "bound": r.bound,
        "exhaustive": exhaustive,
        "witness": witness,
        "checks_performed": r.checks_performed,
        "pool_size": r.pool_size,
    })
}

fn fan_json<C: Codec>(cat: &C, fan: &Fan<C::Object, C::Morphism>) -> Value {
    json!({
        "target": cat.describe(&fan.target),
        "components": fan.components.iter().map(|f| cat.morphism_json(f)).collect::<Vec<_>>(),
    })
}

fn subspace_json(h: &Subspace) -> Value {
    json!({"dim": h.dim(), "basis": h.basis_vectors()})
}

fn generic<C: Codec + Extensions + Translate>(w: &World<C>, cmd: &Command, opts: &Options) -> Res {
    let cat = &w.cat;
    match cmd {
        Command::Hom { m, n, .. } => {
            let (m, n) = (w.object(m)?, w.object(n)?);
            let basis = cat.hom_basis(&m, &n);
            Ok(Response::pass(json!({
                "source": cat.describe(&m),
                "target": cat.describe(&n),
                "dim": basis.len(),
                "basis": basis.iter().map(|f| cat.morphism_json(f)).collect::<Vec<_>>(),
            })))
        }
        Command::Kernel { f, .. } => {
            let f = w.morphism(f)?;
            let k = cat.kernel(&f);
            let c = cat.cokernel(&f);
            Ok(Response::pass(json!({
                "kernel": cat.object_json(&cat.source(&k)),
                "inclusion": cat.morphism_json(&k),
                "cokernel": cat.object_json(&cat.target(&c)),
                "projection": cat.morphism_json(&c),
                "is_mono": cat.is_mono(&f),
                "is_epi": cat.is_epi(&f),
            })))
        }
        Command::Ext { x, y, .. } => {
            let (x, y) = (w.object(x)?, w.object(y)?);
            let classes: Vec<Value> = cat
                .ext_basis(&x, &y)
                .iter()
                .map(|s| {
                    json!({
                        "middle": cat.object_json(&cat.target(&s.inclusion)),
                        "inclusion": cat.morphism_json(&s.inclusion),
                        "projection": cat.morphism_json(&s.projection),
                    })
                })
                .collect();
            Ok(Response::pass(json!({
                "left": cat.describe(&y),
                "right": cat.describe(&x),
                "dim": cat.ext_dim(&x, &y),
                "classes": classes,
            })))
        }
        Command::Tau { x, inverse, .. } => {
            let x = w.object(x)?;
            let t = if *inverse {
                cat.tau_inverse(&x)?
            } else {
                cat.tau(&x)?
            };
            let summands: Vec<String> = cat
                .decompose(&t)?
                .iter()
                .map(|s| cat.describe(&s.object))
                .collect();
            Ok(Response::pass(json!({
                "object": cat.describe(&x),
                "translate": if *inverse { "tau_inverse" } else { "tau" },
                "result": cat.object_json(&t),
                "summands": summands,
            })))
        }
        Command::Decompose { x, .. } => {
            let x = w.object(x)?;
            let parts = cat.decompose(&x)?;
            let summands: Vec<Value> = parts
                .iter()
                .map(|s| {
                    json!({
                        "object": cat.object_json(&s.object),
                        "inclusion": cat.morphism_json(&s.inclusion),
                        "projection": cat.morphism_json(&s.projection),
                    })
                })
                .collect();
            Ok(Response::pass(json!({
                "object": cat.describe(&x),
                "indecomposable": parts.len() == 1,
                "summands": summands,
            })))
        }
        Command::Determined { f, c, left, .. } => {
            let f = w.morphism(f)?;
            let c = w.object(c)?;
            let (x, y) = (cat.source(&f), cat.target(&f));
            let bound = match opts.bound {
                Some(b) => b,
                None => default_bound(cat, &x, &y, &c)?,
            };
            let report = if *left {
                is_left_determined(cat, &Fan::single(&Opposite(cat), &f), &c, bound)?
            } else {
                is_right_determined(cat, &Fan::single(cat, &f), &c, bound)?
            };
            Ok(Response::pass(json!({
                "morphism": cat.morphism_json(&f),
                "determiner": cat.describe(&c),
                "side": if *left { "left" } else { "right" },
                "report": verdict_json(cat, &report, cat.pool_is_exhaustive(bound)),
            }))
            .bounds(json!({"pool": bound})))
        }
        Command::Represent { c, y, index, .. } => {
            let (c, y) = (w.object(c)?, w.object(y)?);
            let bound = match opts.bound {
                Some(b) => b,
                None => default_bound(cat, &cat.zero_object(), &y, &c)?,
            };
            let subs = enumerate_submodules(&gamma_module(cat, &c, &y), cat.limits().enumeration)?;
            if let Some(i) = index.filter(|&i| i >= subs.len()) {
                return Err(CliError::Input(format!(
                    "index {i} out of range; {} submodules",
                    subs.len()
                )));
            }
            let mut rows = Vec::new();
            for (i, h) in subs.iter().enumerate() {
                if index.is_some_and(|k| k != i) {
                    continue;
                }
                let raw = represent_pair(cat, &c, &y, &h.carrier, bound)?;
                let m = right_minimize(cat, &raw)?;
                let realized = im_hom(cat, &c, &raw) == h.carrier;
                rows.push(json!({
                    "index": i,
                    "submodule": subspace_json(&h.carrier),
                    "raw_components": raw.len(),
                    "im_hom_matches": realized,
                    "minimized": fan_json(cat, &m.fan),
                    "minimal_certified": m.certified,
                }));
            }
            let passed = rows.iter().all(|r| r["im_hom_matches"] == json!(true));
            Ok(Response {
                result: json!({"c": cat.describe(&c), "y": cat.describe(&y), "rows": rows}),
                bounds: json!({"pool": bound}),
                passed,
                tsv: None,
            })
        }
        Command::Minimize { f, .. } => {
            let f = w.morphism(f)?;
            let m = right_minimize(cat, &Fan::single(cat, &f))?;
            Ok(Response::pass(json!({
                "morphism": cat.morphism_json(&f),
                "minimized": fan_json(cat, &m.fan),
                "removed": m.removed,
                "certified": m.certified,
            })))
        }
        Command::Table { c, y, .. } => {
            let (c, y) = (w.object(c)?, w.object(y)?);
            let bound = match opts.bound {
                Some(b) => b,
                None => default_bound(cat, &cat.zero_object(), &y, &c)?,
            };
            let table = auslander_table(cat, &c, &y, bound)?;
            let exhaustive = cat.pool_is_exhaustive(bound);
            let mut tsv = String::from("row\tdim_H\tH_basis\trepresentative\tminimal_certified\tim_hom_matches\tverdict\tis_epi\n");
            let rows: Vec<Value> = table
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let v = verdict_json(cat, &r.verdict, exhaustive);
                    let sources: Vec<String> = r
                        .representative
                        .sources(cat)
                        .iter()
                        .map(|s| cat.describe(s))
                        .collect();
                    tsv.push_str(&format!(
                        "{i}\t{}\t{:?}\t{}\t{}\t{}\t{}\t{}\n",
                        r.submodule.dim(),
                        r.submodule.basis_vectors(),
                        if sources.is_empty() {
                            "0".to_string()
                        } else {
                            sources.join("+")
                        },
                        r.minimal_certified,
                        r.im_hom_matches,
                        v["verdict"].as_str().unwrap_or_default(),
                        r.is_epi
                    ));
                    json!({
                        "submodule": subspace_json(&r.submodule),
                        "representative": fan_json(cat, &r.representative),
                        "minimal_certified": r.minimal_certified,
                        "im_hom_matches": r.im_hom_matches,
                        "verdict": v,
                        "is_epi": r.is_epi,
                    })
                })
                .collect();
            Ok(Response {
                result: json!({
                    "c": cat.describe(&c),
                    "y": cat.describe(&y),
                    "row_count": rows.len(),
                    "pairwise_distinct": table.pairwise_distinct,
                    "rows": rows,
                }),
                bounds: json!({"pool": bound, "exhaustive": exhaustive}),
                passed: table.all_rows_pass(),
                tsv: Some(tsv),
            })
        }
        Command::AlmostSplit { .. } | Command::SerrePairing { .. } | Command::Verify { .. } => {
            unreachable!("handled per instance kind")
        }
    }
}
