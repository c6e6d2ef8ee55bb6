use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use coxeter_core::rigidity::{self, Bijectivity, InvolutionClass, IsomorphismSearch, MapFile};
use coxeter_core::{davis, enumeration, presentation, spherical};
use coxeter_core::{CoxeterMatrix, CoxeterSystem, GroupElement, Order, ParabolicSubset};
use serde_json::{json, Value};

use crate::report::{Failure, Outcome};
use crate::{Command, DavisCommand, DavisView, Format, RunConfig, TableCommand};

type Result<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Input)
}

fn load(path: &Path) -> Result<CoxeterMatrix> {
    presentation::parse(&read(path)?)
        .with_context(|| format!("in {}", path.display()))
        .map_err(Failure::Input)
}

fn system(path: &Path, cfg: &RunConfig) -> Result<Arc<CoxeterSystem>> {
    Ok(Arc::new(CoxeterSystem::with_limits(
        load(path)?,
        cfg.limits(),
    )))
}

fn element(sys: &CoxeterSystem, text: &str) -> Result<GroupElement> {
    Ok(sys.parse(text)?)
}

fn names(m: &CoxeterMatrix, g: &GroupElement) -> Value {
    json!(g.word().names(m))
}

fn subset_names(m: &CoxeterMatrix, t: ParabolicSubset) -> Value {
    json!(t.iter().map(|s| m.label(s)).collect::<Vec<_>>())
}

fn parse_subset(m: &CoxeterMatrix, text: &str) -> Result<ParabolicSubset> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(ParabolicSubset::EMPTY);
    }
    text.split(',')
        .map(|name| m.generator(name.trim()))
        .collect::<coxeter_core::Result<ParabolicSubset>>()
        .map_err(Failure::from)
}

fn order_json(k: Order) -> Value {
    match k {
        Order::Finite(k) => json!(k),
        Order::Infinity => json!("inf"),
    }
}

pub fn run(command: &Command, cfg: &RunConfig) -> Result<Outcome> {
    match command {
        Command::Validate { m } => {
            let m = load(m)?;
            Ok(Outcome::affirmative(
                format!(
                    "valid: rank {}, generators {}",
                    m.rank(),
                    m.labels().join(" ")
                ),
                json!({"rank": m.rank(), "presentation": presentation::to_json(&m)}),
            ))
        }

        Command::Reduce { m, word } => {
            let sys = system(m, cfg)?;
            let g = element(&sys, word)?;
            let m = sys.matrix();
            let text = g.display(m).to_string();
            Ok(Outcome::affirmative(
                text,
                json!({"word": names(m, &g), "length": g.length()}),
            ))
        }

        Command::Equal { m, a, b } => {
            let sys = system(m, cfg)?;
            let (x, y) = (element(&sys, a)?, element(&sys, b)?);
            let equal = x == y;
            let m = sys.matrix();
            Ok(Outcome::new(
                equal,
                if equal { "equal" } else { "not equal" },
                json!({"equal": equal, "a": names(m, &x), "b": names(m, &y)}),
            ))
        }

        Command::Order {
            m,
            word: Some(word),
        } => {
            let sys = system(m, cfg)?;
            let g = element(&sys, word)?;
            let k = rigidity::element_order(&sys, &g)?;
            Ok(Outcome::affirmative(
                k.to_string(),
                json!({"word": names(sys.matrix(), &g), "order": order_json(k)}),
            ))
        }

        Command::Order { m, word: None } => {
            let m = load(m)?;
            let verdict = spherical::is_spherical(&m, m.all());
            let catalog = verdict.order();
            let mut warnings = Vec::new();
            let oracle = match catalog {
                Some(n) if n <= cfg.size_cap as u128 => {
                    let found = enumeration::group_order(&m, cfg.size_cap).map(|k| k as u128);
                    if found != Some(n) {
                        return Err(Failure::Input(anyhow!(
                            "catalog order {n} disagrees with enumeration {found:?}"
                        )));
                    }
                    found
                }
                Some(n) => {
                    warnings.push(format!("order {n} exceeds --size-cap; enumeration skipped"));
                    None
                }
                None => None,
            };
            let (text, order) = match catalog {
                Some(n) => (n.to_string(), big_number(n)),
                None => ("inf".to_string(), json!("inf")),
            };
            Ok(Outcome::affirmative(
                text,
                json!({
                    "order": order,
                    "enumerated": oracle.is_some(),
                    "witness": verdict.describe(&m),
                }),
            )
            .warn(warnings))
        }

        Command::Spherical { m, subset } => {
            let m = load(m)?;
            let t = match subset {
                Some(text) => parse_subset(&m, text)?,
                None => m.all(),
            };
            let verdict = spherical::is_spherical(&m, t);
            let description = verdict.describe(&m);
            Ok(Outcome::new(
                verdict.finite,
                format!("{}: {description}", t.display(&m)),
                json!({
                    "subset": subset_names(&m, t),
                    "spherical": verdict.finite,
                    "order": verdict.order().map(big_number),
                    "description": description,
                    "witness": verdict.witness,
                }),
            ))
        }

        Command::Dimension { m } => {
            let m = load(m)?;
            let d = spherical::davis_dimension(&m);
            let maximal: Vec<_> = spherical::maximal_spherical_subsets(&m)
                .into_iter()
                .map(|t| subset_names(&m, t))
                .collect();
            Ok(Outcome::affirmative(
                d.to_string(),
                json!({
                    "dimension": d,
                    "two_dimensional": spherical::is_two_dimensional(&m),
                    "maximal_spherical": maximal,
                }),
            ))
        }

        Command::Davis {
            command:
                DavisCommand::Build {
                    m,
                    radius,
                    format,
                    view,
                },
        } => {
            let sys = system(m, cfg)?;
            let complex = davis::build_complex(&sys, *radius)?;
            let m = sys.matrix();
            let (text, result) = match (format, view) {
                (Format::Dot, DavisView::Hasse) => {
                    let dot = complex.to_dot_hasse(m);
                    (dot.clone(), json!(dot))
                }
                (Format::Dot, DavisView::Skeleton) => {
                    let dot = complex.to_dot_skeleton(m);
                    (dot.clone(), json!(dot))
                }
                (Format::Json, DavisView::Hasse) => {
                    let value = complex.to_json(m);
                    (
                        serde_json::to_string_pretty(&value).expect("plain JSON"),
                        value,
                    )
                }
                (Format::Json, DavisView::Skeleton) => {
                    let (vertices, edges) = complex.one_skeleton();
                    let value = json!({
                        "radius": complex.radius(),
                        "complete": complex.is_complete(),
                        "vertices": vertices.iter().map(|v| names(m, v)).collect::<Vec<_>>(),
                        "edges": edges.iter().map(|(a, b)| json!([names(m, a), names(m, b)])).collect::<Vec<_>>(),
                    });
                    (
                        serde_json::to_string_pretty(&value).expect("plain JSON"),
                        value,
                    )
                }
            };
            let mut warnings = Vec::new();
            if !complex.is_complete() {
                warnings.push(format!(
                    "truncated at radius {radius}: cells with a vertex farther out are omitted"
                ));
            }
            Ok(Outcome::affirmative(text, result).warn(warnings))
        }

        Command::IsReflection { m, word } => {
            let sys = system(m, cfg)?;
            let g = element(&sys, word)?;
            let yes = rigidity::is_reflection(&sys, &g)?;
            Ok(Outcome::new(
                yes,
                yes.to_string(),
                json!({"word": names(sys.matrix(), &g), "reflection": yes}),
            ))
        }

        Command::NormalForm { m, word } => {
            let sys = system(m, cfg)?;
            let g = element(&sys, word)?;
            let nf = rigidity::involution_normal_form(&sys, &g)?;
            let class = rigidity::classify_involution(&sys, &g)?;
            let m = sys.matrix();
            let mut text = format!(
                "conjugator: {}\ncore: {}\nsupport: {}\nclass: {}",
                nf.conjugator.display(m),
                nf.core.display(m),
                nf.core_support.display(m),
                serde_json::to_value(class.kind())
                    .expect("plain enum")
                    .as_str()
                    .unwrap_or_default(),
            );
            if let InvolutionClass::Rotation { half_order, .. } = &class {
                let _ = write!(text, " (half-turn, exponent {half_order})");
            }
            Ok(Outcome::affirmative(
                text,
                json!({
                    "conjugator": names(m, &nf.conjugator),
                    "core": names(m, &nf.core),
                    "support": subset_names(m, nf.core_support),
                    "class": class.kind(),
                }),
            ))
        }

        Command::Twist { m, s, t } => {
            let sys = system(m, cfg)?;
            let mat = sys.matrix();
            let (s, t) = (mat.generator(s)?, mat.generator(t)?);
            let (twisted, map) = rigidity::twist_generating_set(&sys, s, t)?;
            let mut text = presentation::to_dsl(&twisted);
            for (i, img) in map.images().iter().enumerate() {
                let _ = writeln!(text, "# {} = {}", twisted.label(i), img.display(mat));
            }
            let images: serde_json::Map<_, _> = map
                .images()
                .iter()
                .enumerate()
                .map(|(i, img)| (twisted.label(i).to_string(), names(mat, img)))
                .collect();
            Ok(Outcome::affirmative(
                text,
                json!({"presentation": presentation::to_json(&twisted), "images": images}),
            ))
        }

        Command::Align { map, radius } => {
            let radius = radius.unwrap_or(cfg.search_radius);
            let phi = MapFile::parse(&read(map)?)
                .and_then(|f| f.build(cfg.limits()))
                .with_context(|| format!("in {}", map.display()))?;
            let mut warnings = Vec::new();
            match phi.bijectivity(cfg.search_radius, cfg.size_cap)? {
                Bijectivity::Verified => {}
                Bijectivity::UnverifiedAtRadius(r) => warnings.push(format!(
                    "could not confirm that the images generate the target within radius {r}"
                )),
                Bijectivity::Refuted(why) => {
                    return Err(Failure::Input(anyhow!("map is not an isomorphism: {why}")))
                }
            }
            let alignment = rigidity::align_generating_sets(&phi, radius)?;
            let (sm, tm) = (phi.source().matrix(), phi.target().matrix());

            let mut text = String::new();
            let s0: Vec<_> = alignment.s0.iter().map(|&s| sm.label(s)).collect();
            let _ = writeln!(text, "generators not sent to reflections: {}", s0.join(" "));
            let mut resolutions = Vec::new();
            for r in &alignment.resolutions {
                let (s2, t2) = r.target_pair;
                let _ = writeln!(
                    text,
                    "{}: partner {}, s' = {}, t' = {}, w' = {}, all {} checks hold",
                    sm.label(r.s),
                    sm.label(r.partner_t),
                    tm.label(s2),
                    tm.label(t2),
                    r.conjugator_w.display(tm),
                    rigidity::CLAUSES.len()
                );
                resolutions.push(json!({
                    "s": sm.label(r.s),
                    "t": sm.label(r.partner_t),
                    "s_prime": tm.label(s2),
                    "t_prime": tm.label(t2),
                    "w_prime": names(tm, &r.conjugator_w),
                    "clauses_verified": rigidity::CLAUSES,
                }));
            }
            let mut generators = Vec::new();
            for (i, g) in alignment.new_generators.iter().enumerate() {
                let image = alignment.map.image(i);
                let _ = writeln!(
                    text,
                    "{} = {} -> {}",
                    alignment.matrix.label(i),
                    g.display(sm),
                    image.display(tm)
                );
                generators.push(json!({
                    "label": alignment.matrix.label(i),
                    "element": names(sm, g),
                    "image": names(tm, image),
                }));
            }
            let _ = write!(
                text,
                "diagram preserved: {}, images are reflections: {}, same size: {}",
                alignment.checks.diagram_isomorphic,
                alignment.checks.all_reflections,
                alignment.checks.same_cardinality
            );
            Ok(Outcome::affirmative(
                text,
                json!({
                    "s0": s0,
                    "resolutions": resolutions,
                    "generators": generators,
                    "presentation": presentation::to_json(&alignment.matrix),
                    "checks": alignment.checks,
                }),
            )
            .warn(warnings))
        }

        Command::Invariants { m } => {
            let m = load(m)?;
            let inv = rigidity::diagram_invariants(&m);
            Ok(Outcome::affirmative(inv.to_string(), json!(inv)))
        }

        Command::Compare {
            m,
            against,
            search_iso,
        } => {
            let (a, b) = (load(m)?, load(against)?);
            let cmp = rigidity::compare_systems(&a, &b, cfg.size_cap);
            let equal = cmp.invariants.equal();
            let show = |o: Option<usize>| {
                o.map_or("infinite or beyond --size-cap".to_string(), |n| {
                    n.to_string()
                })
            };
            let mut text = format!(
                "invariants: {} vs {} ({})\norders: {} vs {}\ndimensions: {} vs {}",
                cmp.invariants.left,
                cmp.invariants.right,
                if equal { "same" } else { "differ" },
                show(cmp.orders.0),
                show(cmp.orders.1),
                cmp.dimensions.0,
                cmp.dimensions.1,
            );
            let mut result = json!(cmp);
            if let Some(obj) = result.as_object_mut() {
                obj.remove("warnings");
            }
            if *search_iso {
                let (summary, value) = match rigidity::find_isomorphism(&a, &b, cfg.size_cap) {
                    IsomorphismSearch::Found(images) => {
                        let images: serde_json::Map<_, _> = images
                            .iter()
                            .enumerate()
                            .map(|(i, w)| (a.label(i).to_string(), json!(w.names(&b))))
                            .collect();
                        let pretty: Vec<_> = images
                            .iter()
                            .map(|(k, v)| format!("{k} -> {}", words_text(v)))
                            .collect();
                        (
                            format!("isomorphism found: {}", pretty.join(", ")),
                            json!({"status": "found", "images": images}),
                        )
                    }
                    IsomorphismSearch::NoneExists(why) => (
                        format!("no isomorphism: {why}"),
                        json!({"status": "none", "reason": why}),
                    ),
                    IsomorphismSearch::Undecided(why) => (
                        format!("isomorphism search undecided: {why}"),
                        json!({"status": "undecided", "reason": why}),
                    ),
                };
                let _ = write!(text, "\n{summary}");
                result["isomorphism"] = value;
            }
            Ok(Outcome::new(equal, text, result).warn(cmp.warnings))
        }

        Command::Table {
            command: TableCommand::Export { m, format },
        } => {
            let m = load(m)?;
            let table = enumeration::enumerate(&m, cfg.enum_radius, cfg.size_cap);
            let (text, result) = match format {
                Format::Dot => {
                    let dot = table.to_dot(&m);
                    (dot.clone(), json!(dot))
                }
                Format::Json => {
                    let value = table.to_json(&m);
                    (
                        serde_json::to_string_pretty(&value).expect("plain JSON"),
                        value,
                    )
                }
            };
            let mut warnings = Vec::new();
            if !table.is_complete() {
                warnings.push(format!(
                    "ball of radius {} with {} elements; the group was not exhausted",
                    table.radius(),
                    table.len()
                ));
            }
            Ok(Outcome::affirmative(text, result).warn(warnings))
        }
    }
}

fn words_text(v: &Value) -> String {
    let letters: Vec<_> = v
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_str).collect())
        .unwrap_or_default();
    if letters.is_empty() {
        "1".into()
    } else {
        letters.join(",")
    }
}

fn big_number(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| json!(n.to_string()), |n| json!(n))
}
