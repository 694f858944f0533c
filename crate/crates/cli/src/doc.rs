//! Input documents: one JSON object with named sections that refer to each
//! other by name.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Deserialize;
use xmod_homology::grp::{make_group, FiniteGroup, GroupAction, GroupHom, GroupOps, GroupSpec, GrpError, Subgroup, INPUT_ORDER_CAP};
use xmod_homology::xmod::{
    inclusion_xmod, AbelianXMod, CrossedModule, ModuleMorphism, ShortExactModules, ShortExactXMod, XModAction,
    XModError, XModMorphism,
};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    #[serde(default)]
    groups: BTreeMap<String, RawGroup>,
    #[serde(default)]
    homomorphisms: BTreeMap<String, RawHom>,
    #[serde(default)]
    actions: BTreeMap<String, RawAction>,
    #[serde(default)]
    crossed_modules: BTreeMap<String, RawXMod>,
    #[serde(default)]
    modules: BTreeMap<String, RawModule>,
    #[serde(default)]
    module_actions: BTreeMap<String, RawModuleAction>,
    #[serde(default)]
    xmod_morphisms: BTreeMap<String, RawMorphism>,
    #[serde(default)]
    module_morphisms: BTreeMap<String, RawModuleMorphism>,
    #[serde(default)]
    sequences: BTreeMap<String, RawSequence>,
    #[serde(default)]
    module_sequences: BTreeMap<String, RawSequence>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RawGroup {
    Table(Vec<Vec<usize>>),
    Permutations(Vec<Vec<usize>>),
    Cyclic(usize),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHom {
    from: String,
    to: String,
    images: Option<Vec<usize>>,
    generators: Option<Vec<usize>>,
    generator_images: Option<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    actor: String,
    target: String,
    table: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    conjugation: bool,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RawXMod {
    /// A homomorphism and an action; trivial action when omitted.
    Boundary { hom: String, action: Option<String> },
    Inclusion { group: String, subgroup: Vec<usize> },
    Identity(String),
    Group(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    crossed_module: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModuleAction {
    actor: String,
    module: String,
    on_c: Option<String>,
    on_a: Option<String>,
    xi: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    source: String,
    target: String,
    top: String,
    bottom: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModuleMorphism {
    source: String,
    target: String,
    on_c: String,
    on_a: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSequence {
    left: String,
    right: String,
}

/// Why a document was rejected. `Invalid` is a mathematical failure, the
/// rest are input errors.
#[derive(Debug)]
pub enum DocError {
    Parse(String),
    Dangling { section: &'static str, name: String, missing: String },
    Shape { section: &'static str, name: String, message: String },
    TooLarge { section: &'static str, name: String, message: String },
    Invalid { section: &'static str, name: String, message: String },
}

impl DocError {
    pub fn is_mathematical(&self) -> bool {
        matches!(self, DocError::Invalid { .. })
    }
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Parse(m) => write!(f, "parse error: {m}"),
            DocError::Dangling { section, name, missing } => write!(f, "{section}.{name}: unknown reference {missing:?}"),
            DocError::Shape { section, name, message } => write!(f, "{section}.{name}: {message}"),
            DocError::TooLarge { section, name, message } => write!(f, "{section}.{name}: {message}"),
            DocError::Invalid { section, name, message } => write!(f, "{section}.{name}: {message}"),
        }
    }
}

#[derive(Debug, Default)]
pub struct Document {
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub homomorphisms: BTreeMap<String, GroupHom>,
    pub actions: BTreeMap<String, GroupAction>,
    pub crossed_modules: BTreeMap<String, CrossedModule>,
    pub modules: BTreeMap<String, AbelianXMod>,
    pub module_actions: BTreeMap<String, XModAction>,
    pub xmod_morphisms: BTreeMap<String, XModMorphism>,
    pub module_morphisms: BTreeMap<String, ModuleMorphism>,
    pub sequences: BTreeMap<String, ShortExactXMod>,
    pub module_sequences: BTreeMap<String, ShortExactModules>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, section: &'static str, name: &str, key: &str) -> Result<&'a T, DocError> {
    map.get(key).ok_or_else(|| DocError::Dangling { section, name: name.into(), missing: key.into() })
}

fn grp_error(section: &'static str, name: &str, e: GrpError) -> DocError {
    let (name, message) = (name.to_string(), e.to_string());
    match e {
        GrpError::TooLarge { .. } => DocError::TooLarge { section, name, message },
        GrpError::NotSquare | GrpError::OutOfRange(..) | GrpError::NotBijective(_) | GrpError::DegreeMismatch | GrpError::Shape(_) => {
            DocError::Shape { section, name, message }
        }
        _ => DocError::Invalid { section, name, message },
    }
}

fn xmod_error(section: &'static str, name: &str, e: XModError) -> DocError {
    match e {
        XModError::Group(g) => grp_error(section, name, g),
        XModError::Shape(message) => DocError::Shape { section, name: name.into(), message },
        other => DocError::Invalid { section, name: name.into(), message: other.to_string() },
    }
}

pub fn parse(text: &str) -> Result<Document, DocError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocError::Parse(e.to_string()))?;
    resolve(raw)
}

fn resolve(raw: RawDocument) -> Result<Document, DocError> {
    let mut d = Document::default();

    for (name, g) in raw.groups {
        const S: &str = "groups";
        let group = match g {
            RawGroup::Table(t) => make_group(&GroupSpec::Table(t)),
            RawGroup::Permutations(p) => make_group(&GroupSpec::Permutations(p)),
            RawGroup::Cyclic(n) if n == 0 || n > INPUT_ORDER_CAP => {
                Err(GrpError::TooLarge { order: n, cap: INPUT_ORDER_CAP })
            }
            RawGroup::Cyclic(n) => Ok(FiniteGroup::cyclic(n)),
        }
        .map_err(|e| grp_error(S, &name, e))?;
        d.groups.insert(name, Arc::new(group));
    }

    for (name, h) in raw.homomorphisms {
        const S: &str = "homomorphisms";
        let from = lookup(&d.groups, S, &name, &h.from)?.clone();
        let to = lookup(&d.groups, S, &name, &h.to)?.clone();
        let hom = match (h.images, h.generators, h.generator_images) {
            (Some(images), None, None) => GroupHom::new(from, to, images),
            (None, Some(gens), Some(images)) => GroupHom::from_generators(from, to, &gens, &images),
            _ => {
                return Err(DocError::Shape {
                    section: S,
                    name,
                    message: "give either images or generators with generator_images".into(),
                })
            }
        }
        .map_err(|e| grp_error(S, &name, e))?;
        d.homomorphisms.insert(name, hom);
    }

    for (name, a) in raw.actions {
        const S: &str = "actions";
        let actor = lookup(&d.groups, S, &name, &a.actor)?.clone();
        let target = lookup(&d.groups, S, &name, &a.target)?.clone();
        let act = match (a.table, a.conjugation) {
            (Some(rows), false) => GroupAction::new(actor, target, &rows),
            (None, true) if actor == target => Ok(GroupAction::conjugation(actor)),
            (None, false) => Ok(GroupAction::trivial(actor, target)),
            _ => {
                return Err(DocError::Shape {
                    section: S,
                    name,
                    message: "conjugation needs actor = target and no table".into(),
                })
            }
        }
        .map_err(|e| grp_error(S, &name, e))?;
        d.actions.insert(name, act);
    }

    for (name, x) in raw.crossed_modules {
        const S: &str = "crossed_modules";
        let xmod = match x {
            RawXMod::Boundary { hom, action } => {
                let mu = lookup(&d.homomorphisms, S, &name, &hom)?.clone();
                let act = match action {
                    Some(a) => lookup(&d.actions, S, &name, &a)?.clone(),
                    None => GroupAction::trivial(mu.cod().clone(), mu.dom().clone()),
                };
                CrossedModule::new(mu, act)
            }
            RawXMod::Inclusion { group, subgroup } => {
                let g = lookup(&d.groups, S, &name, &group)?.clone();
                if let Some(&bad) = subgroup.iter().find(|&&s| s >= g.order()) {
                    return Err(DocError::Shape { section: S, name, message: format!("element {bad} out of range") });
                }
                inclusion_xmod(&Subgroup::generated_by(g, &subgroup))
            }
            RawXMod::Identity(g) => Ok(CrossedModule::identity(lookup(&d.groups, S, &name, &g)?.clone())),
            RawXMod::Group(g) => Ok(CrossedModule::of_group(lookup(&d.groups, S, &name, &g)?.clone())),
        }
        .map_err(|e| xmod_error(S, &name, e))?;
        d.crossed_modules.insert(name, xmod);
    }

    for (name, m) in raw.modules {
        const S: &str = "modules";
        let x = lookup(&d.crossed_modules, S, &name, &m.crossed_module)?.clone();
        let module = AbelianXMod::new(x).map_err(|e| xmod_error(S, &name, e))?;
        d.modules.insert(name, module);
    }

    for (name, a) in raw.module_actions {
        const S: &str = "module_actions";
        let actor = lookup(&d.crossed_modules, S, &name, &a.actor)?.clone();
        let module = lookup(&d.modules, S, &name, &a.module)?.clone();
        let (c, p) = (module.xmod().h().clone(), module.xmod().g().clone());
        let act_c = match a.on_c {
            Some(n) => lookup(&d.actions, S, &name, &n)?.clone(),
            None => GroupAction::trivial(actor.g().clone(), c),
        };
        let act_a = match a.on_a {
            Some(n) => lookup(&d.actions, S, &name, &n)?.clone(),
            None => GroupAction::trivial(actor.g().clone(), p.clone()),
        };
        let xi = a.xi.unwrap_or_else(|| vec![vec![0; p.order()]; actor.h().order()]);
        let action = XModAction::new(actor, module, act_c, act_a, xi).map_err(|e| xmod_error(S, &name, e))?;
        d.module_actions.insert(name, action);
    }

    for (name, m) in raw.xmod_morphisms {
        const S: &str = "xmod_morphisms";
        let source = lookup(&d.crossed_modules, S, &name, &m.source)?.clone();
        let target = lookup(&d.crossed_modules, S, &name, &m.target)?.clone();
        let top = lookup(&d.homomorphisms, S, &name, &m.top)?.clone();
        let bottom = lookup(&d.homomorphisms, S, &name, &m.bottom)?.clone();
        let morphism = XModMorphism::new(source, target, top, bottom).map_err(|e| xmod_error(S, &name, e))?;
        d.xmod_morphisms.insert(name, morphism);
    }

    for (name, m) in raw.module_morphisms {
        const S: &str = "module_morphisms";
        let source = lookup(&d.module_actions, S, &name, &m.source)?.clone();
        let target = lookup(&d.module_actions, S, &name, &m.target)?.clone();
        let on_c = lookup(&d.homomorphisms, S, &name, &m.on_c)?.clone();
        let on_a = lookup(&d.homomorphisms, S, &name, &m.on_a)?.clone();
        let f = ModuleMorphism::new(source, target, on_c, on_a).map_err(|e| xmod_error(S, &name, e))?;
        d.module_morphisms.insert(name, f);
    }

    for (name, s) in raw.sequences {
        const S: &str = "sequences";
        let left = lookup(&d.xmod_morphisms, S, &name, &s.left)?.clone();
        let right = lookup(&d.xmod_morphisms, S, &name, &s.right)?.clone();
        let ses = ShortExactXMod::new(left, right).map_err(|e| xmod_error(S, &name, e))?;
        d.sequences.insert(name, ses);
    }

    for (name, s) in raw.module_sequences {
        const S: &str = "module_sequences";
        let left = lookup(&d.module_morphisms, S, &name, &s.left)?.clone();
        let right = lookup(&d.module_morphisms, S, &name, &s.right)?.clone();
        let ses = ShortExactModules::new(left, right).map_err(|e| xmod_error(S, &name, e))?;
        d.module_sequences.insert(name, ses);
    }

    Ok(d)
}

impl Document {
    /// One line per section with its object count.
    pub fn summary(&self) -> Vec<(&'static str, usize)> {
        vec![
            ("groups", self.groups.len()),
            ("homomorphisms", self.homomorphisms.len()),
            ("actions", self.actions.len()),
            ("crossed_modules", self.crossed_modules.len()),
            ("modules", self.modules.len()),
            ("module_actions", self.module_actions.len()),
            ("xmod_morphisms", self.xmod_morphisms.len()),
            ("module_morphisms", self.module_morphisms.len()),
            ("sequences", self.sequences.len()),
            ("module_sequences", self.module_sequences.len()),
        ]
    }
}
