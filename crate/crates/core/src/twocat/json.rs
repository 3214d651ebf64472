//! JSON descriptions of categories, poset functors, Σ and transformations.
//!
//! Elements and morphisms are referred to by name. A poset is either
//! `{"chain": n}` (labels `"0".."n-1"`) or `{"elements": [...], "order": [[x, y], ...]}`
//! with `order` generating the relation. A functor lists one poset per object
//! and, for each non-identity morphism, the image labels in element order.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::order::FinitePoset;

use super::category::{Finite2Category, SigmaClass};
use super::functor::{LatticeFunctor, PosetFunctor, PosetTransformation};
use super::transformation::{Kind, Space, Transformation};
use super::TwoCatError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismSpec>,
    /// `[g, f, g∘f]` for every composable non-identity pair.
    #[serde(default)]
    pub composites: Vec<[String; 3]>,
    /// `[f, g]` meaning a 2-cell `f ≤ g`.
    #[serde(default)]
    pub cells: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PosetSpec {
    Chain { chain: usize },
    Explicit {
        elements: Vec<String>,
        #[serde(default)]
        order: Vec<[String; 2]>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorSpec {
    pub objects: BTreeMap<String, PosetSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SigmaSpec {
    Named(SigmaKeyword),
    Members(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaKeyword {
    All,
    None,
    Identities,
}

/// Object name to the list of value labels, one per source element.
pub type TransformationSpec = BTreeMap<String, Vec<String>>;

/// A complete engine instance: a space `[F, G]_Σ`, optional named
/// transformations and an optional `ι: F → H` for extensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EngineInstance {
    pub category: CategorySpec,
    pub source: FunctorSpec,
    pub target: FunctorSpec,
    #[serde(default = "default_sigma")]
    pub sigma: SigmaSpec,
    #[serde(default)]
    pub transformations: BTreeMap<String, TransformationSpec>,
    #[serde(default)]
    pub kind: Option<Kind>,
    #[serde(default)]
    pub extension: Option<ExtensionSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    pub along: FunctorSpec,
    /// Object name to image labels in `H`.
    pub iota: TransformationSpec,
}

fn default_sigma() -> SigmaSpec {
    SigmaSpec::Named(SigmaKeyword::None)
}

fn input(msg: impl Into<String>) -> TwoCatError {
    TwoCatError::Input(msg.into())
}

impl CategorySpec {
    pub fn build(&self) -> Result<Finite2Category, TwoCatError> {
        let obj = |name: &str| {
            self.objects
                .iter()
                .position(|o| o == name)
                .ok_or_else(|| TwoCatError::UnknownObject(name.to_string()))
        };
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Ok((m.name.clone(), obj(&m.source)?, obj(&m.target)?)))
            .collect::<Result<Vec<_>, TwoCatError>>()?;
        let n = self.objects.len();
        let mor = |name: &str| -> Result<usize, TwoCatError> {
            if let Some(i) = self.objects.iter().position(|o| format!("id_{o}") == name) {
                return Ok(i);
            }
            self.morphisms
                .iter()
                .position(|m| m.name == name)
                .map(|i| i + n)
                .ok_or_else(|| TwoCatError::UnknownMorphism(name.to_string()))
        };
        let composites = self
            .composites
            .iter()
            .map(|[g, f, h]| Ok((mor(g)?, mor(f)?, mor(h)?)))
            .collect::<Result<Vec<_>, TwoCatError>>()?;
        let cells = self
            .cells
            .iter()
            .map(|[f, g]| Ok((mor(f)?, mor(g)?)))
            .collect::<Result<Vec<_>, TwoCatError>>()?;
        Finite2Category::new(self.objects.clone(), morphisms, &composites, &cells)
    }
}

impl PosetSpec {
    pub fn build(&self) -> Result<FinitePoset, TwoCatError> {
        match self {
            PosetSpec::Chain { chain } => Ok(FinitePoset::chain(*chain)),
            PosetSpec::Explicit { elements, order } => {
                let idx = |l: &str| {
                    elements
                        .iter()
                        .position(|e| e == l)
                        .ok_or_else(|| input(format!("unknown element {l:?}")))
                };
                let pairs = order
                    .iter()
                    .map(|[x, y]| Ok((idx(x)?, idx(y)?)))
                    .collect::<Result<Vec<_>, TwoCatError>>()?;
                FinitePoset::from_pairs(elements.clone(), &pairs).map_err(|e| input(e.to_string()))
            }
        }
    }
}

impl FunctorSpec {
    pub fn build(&self, cat: &Arc<Finite2Category>) -> Result<PosetFunctor, TwoCatError> {
        if let Some(extra) = self.objects.keys().find(|k| cat.object_index(k).is_err()) {
            return Err(TwoCatError::UnknownObject(extra.clone()));
        }
        let posets = cat
            .objects()
            .iter()
            .map(|o| {
                self.objects
                    .get(o)
                    .ok_or_else(|| input(format!("no poset for object {o:?}")))?
                    .build()
                    .map(Arc::new)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(extra) = self.maps.keys().find(|k| cat.morphism_index(k).is_err()) {
            return Err(TwoCatError::UnknownMorphism(extra.clone()));
        }
        let tables = (0..cat.morphism_count())
            .map(|f| {
                let m = cat.morphism(f);
                if cat.is_identity(f) && !self.maps.contains_key(&m.name) {
                    return Ok((0..posets[m.source].len()).collect());
                }
                let labels = self
                    .maps
                    .get(&m.name)
                    .ok_or_else(|| input(format!("no table for morphism {:?}", m.name)))?;
                if labels.len() != posets[m.source].len() {
                    return Err(input(format!("table for {:?} has the wrong length", m.name)));
                }
                labels
                    .iter()
                    .map(|l| posets[m.target].index_of(l).map_err(|e| input(e.to_string())))
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>, _>>()?;
        PosetFunctor::new(cat.clone(), posets, tables)
    }
}

impl SigmaSpec {
    pub fn build(&self, cat: &Finite2Category) -> Result<SigmaClass, TwoCatError> {
        match self {
            SigmaSpec::Named(SigmaKeyword::All) => Ok(SigmaClass::all(cat)),
            SigmaSpec::Named(SigmaKeyword::None) => Ok(SigmaClass::empty(cat)),
            SigmaSpec::Named(SigmaKeyword::Identities) => {
                Ok(SigmaClass::from_predicate(cat, |f| cat.is_identity(f)))
            }
            SigmaSpec::Members(names) => {
                let idx = names
                    .iter()
                    .map(|n| cat.morphism_index(n))
                    .collect::<Result<Vec<_>, _>>()?;
                SigmaClass::from_indices(cat, &idx)
            }
        }
    }
}

fn label_table(
    spec: &TransformationSpec,
    cat: &Finite2Category,
    source: &PosetFunctor,
    target: &PosetFunctor,
) -> Result<Vec<Vec<usize>>, TwoCatError> {
    if let Some(extra) = spec.keys().find(|k| cat.object_index(k).is_err()) {
        return Err(TwoCatError::UnknownObject(extra.clone()));
    }
    (0..cat.object_count())
        .map(|a| {
            let name = cat.object_name(a);
            let labels = spec
                .get(name)
                .ok_or_else(|| input(format!("no component at {name:?}")))?;
            if labels.len() != source.size(a) {
                return Err(input(format!("component at {name:?} has the wrong length")));
            }
            labels
                .iter()
                .map(|l| target.poset(a).index_of(l).map_err(|e| input(e.to_string())))
                .collect()
        })
        .collect()
}

/// A decoded engine instance.
pub struct BuiltInstance {
    pub space: Space<LatticeFunctor>,
    pub transformations: BTreeMap<String, Transformation<usize>>,
    pub extension: Option<(Space<LatticeFunctor>, PosetTransformation)>,
}

impl EngineInstance {
    pub fn build(&self) -> Result<BuiltInstance, TwoCatError> {
        let cat = Arc::new(self.category.build()?);
        let f = Arc::new(self.source.build(&cat)?);
        let g = Arc::new(LatticeFunctor::new(self.target.build(&cat)?)?);
        let sigma = self.sigma.build(&cat)?;
        let space = Space::new(f.clone(), g.clone(), sigma.clone())?;
        let transformations = self
            .transformations
            .iter()
            .map(|(name, spec)| {
                let table = label_table(spec, &cat, &f, g.functor())?;
                Ok((name.clone(), space.family(table)?))
            })
            .collect::<Result<BTreeMap<_, _>, TwoCatError>>()?;
        let extension = match &self.extension {
            None => None,
            Some(ext) => {
                let h = Arc::new(ext.along.build(&cat)?);
                let iota = PosetTransformation::new(&f, &h, label_table(&ext.iota, &cat, &f, &h)?)?;
                Some((Space::new(h, g, sigma)?, iota))
            }
        };
        Ok(BuiltInstance {
            space,
            transformations,
            extension,
        })
    }
}

/// Renders a transformation over a lattice target in the input format.
pub fn transformation_to_spec(space: &Space<LatticeFunctor>, t: &Transformation<usize>) -> TransformationSpec {
    let cat = space.category();
    (0..cat.object_count())
        .map(|a| {
            let p = space.target().functor().poset(a);
            (
                cat.object_name(a).to_string(),
                t.component(a).iter().map(|&v| p.label(v).to_string()).collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const T0: &str = r#"{
        "category": {"objects": ["A", "B"], "morphisms": [{"name": "f", "source": "A", "target": "B"}]},
        "source": {"objects": {"A": {"chain": 2}, "B": {"chain": 2}}, "maps": {"f": ["0", "1"]}},
        "target": {"objects": {"A": {"chain": 2}, "B": {"chain": 2}}, "maps": {"f": ["0", "1"]}},
        "transformations": {"t": {"A": ["0", "1"], "B": ["1", "1"]}}
    }"#;

    #[test]
    fn decodes_t0() {
        let inst: EngineInstance = serde_json::from_str(T0).unwrap();
        let built = inst.build().unwrap();
        let t = &built.transformations["t"];
        assert_eq!(t.component(1), &[1, 1]);
        assert!(built.space.classify(t).is_colax);
        assert_eq!(transformation_to_spec(&built.space, t), inst.transformations["t"]);
    }

    #[test]
    fn explicit_poset_and_sigma() {
        let p: PosetSpec =
            serde_json::from_str(r#"{"elements": ["a", "b", "c"], "order": [["a", "b"], ["b", "c"]]}"#).unwrap();
        let p = p.build().unwrap();
        assert!(p.leq(0, 2));
        let mut inst: EngineInstance = serde_json::from_str(T0).unwrap();
        inst.sigma = serde_json::from_str(r#"["f"]"#).unwrap();
        let built = inst.build().unwrap();
        assert_eq!(built.space.sigma().len(), 1);
    }

    #[test]
    fn unknown_names_are_input_errors() {
        let mut inst: EngineInstance = serde_json::from_str(T0).unwrap();
        inst.source.maps.insert("g".into(), vec![]);
        assert!(matches!(inst.build(), Err(TwoCatError::UnknownMorphism(_))));
        let mut inst: EngineInstance = serde_json::from_str(T0).unwrap();
        inst.transformations.get_mut("t").unwrap().insert("A".into(), vec!["7".into(), "1".into()]);
        assert!(matches!(inst.build(), Err(TwoCatError::Input(_))));
    }
}
