use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Short stable identifier for a concept, e.g. `BBT`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConceptId(String);

impl ConceptId {
    pub fn new(id: impl Into<String>) -> Self {
        ConceptId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ConceptId {
    fn from(s: &str) -> Self {
        ConceptId(s.to_string())
    }
}

/// A node of the ontology. The title is the canonical name; aliases are
/// alternative surface forms that count as mentions of the same concept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Concept {
    pub id: ConceptId,
    pub title: String,
    #[serde(default)]
    pub aliases: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Association,
    Generalization,
    Composition,
    Aggregation,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationKind::Association => "association",
            RelationKind::Generalization => "generalization",
            RelationKind::Composition => "composition",
            RelationKind::Aggregation => "aggregation",
        };
        f.write_str(s)
    }
}

/// A directed, typed edge between two concepts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub source: ConceptId,
    pub target: ConceptId,
}

#[derive(Deserialize)]
struct OntologyFile {
    concepts: Vec<Concept>,
    #[serde(default)]
    relations: Vec<Relation>,
    root: Option<ConceptId>,
}

/// The concept graph. When a root concept is declared, an implicit
/// generalization edge is added from the root to every concept that has no
/// incoming generalization edge of its own, so the graph is connected even
/// when the explicit relations only describe separate subtrees.
#[derive(Clone, Debug)]
pub struct Ontology {
    concepts: Vec<Concept>,
    relations: Vec<Relation>,
    root: Option<ConceptId>,
    root_edges: Vec<Relation>,
    adjacency: BTreeMap<ConceptId, BTreeSet<ConceptId>>,
    by_id: BTreeMap<ConceptId, usize>,
}

impl Ontology {
    pub fn load(path: &Path) -> Result<Ontology> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let file: OntologyFile = toml::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Ontology::from_parts(file.concepts, file.relations, file.root)
    }

    pub fn from_parts(
        concepts: Vec<Concept>,
        relations: Vec<Relation>,
        root: Option<ConceptId>,
    ) -> Result<Ontology> {
        let mut by_id = BTreeMap::new();
        for (i, c) in concepts.iter().enumerate() {
            if by_id.insert(c.id.clone(), i).is_some() {
                return Err(Error::DuplicateConceptId {
                    id: c.id.to_string(),
                });
            }
            if c.title.trim().is_empty() {
                return Err(Error::EmptyConceptTitle {
                    id: c.id.to_string(),
                });
            }
        }

        // Titles and aliases must be unambiguous across concepts, otherwise a
        // mention in a sentence cannot be attributed to a single concept.
        let mut surface_owner: BTreeMap<String, &ConceptId> = BTreeMap::new();
        for c in &concepts {
            for surface in std::iter::once(&c.title).chain(c.aliases.iter()) {
                let key = normalize_surface(surface);
                match surface_owner.get(&key) {
                    Some(owner) if *owner != &c.id => {
                        return Err(Error::ConceptSurfaceClash {
                            surface: surface.clone(),
                            first: owner.to_string(),
                            second: c.id.to_string(),
                        });
                    }
                    _ => {
                        surface_owner.insert(key, &c.id);
                    }
                }
            }
        }

        for r in &relations {
            if r.source == r.target {
                return Err(Error::SelfRelation {
                    from: r.source.to_string(),
                    to: r.target.to_string(),
                });
            }
            for end in [&r.source, &r.target] {
                if !by_id.contains_key(end) {
                    return Err(Error::DanglingRelation {
                        kind: r.kind.to_string(),
                        from: r.source.to_string(),
                        to: r.target.to_string(),
                        missing: end.to_string(),
                    });
                }
            }
        }

        if let Some(root_id) = &root {
            if !by_id.contains_key(root_id) {
                return Err(Error::UnknownRoot {
                    id: root_id.to_string(),
                });
            }
        }

        let root_edges = match &root {
            None => Vec::new(),
            Some(root_id) => {
                let mut has_parent: BTreeSet<&ConceptId> = BTreeSet::new();
                for r in &relations {
                    if r.kind == RelationKind::Generalization {
                        has_parent.insert(&r.target);
                    }
                }
                concepts
                    .iter()
                    .filter(|c| &c.id != root_id && !has_parent.contains(&c.id))
                    .map(|c| Relation {
                        kind: RelationKind::Generalization,
                        source: root_id.clone(),
                        target: c.id.clone(),
                    })
                    .collect()
            }
        };

        check_generalization_acyclic(&concepts, relations.iter().chain(root_edges.iter()))?;

        let mut adjacency: BTreeMap<ConceptId, BTreeSet<ConceptId>> = concepts
            .iter()
            .map(|c| (c.id.clone(), BTreeSet::new()))
            .collect();
        for r in relations.iter().chain(root_edges.iter()) {
            adjacency
                .get_mut(&r.source)
                .expect("validated endpoint")
                .insert(r.target.clone());
            adjacency
                .get_mut(&r.target)
                .expect("validated endpoint")
                .insert(r.source.clone());
        }

        if let Some(root_id) = &root {
            let mut seen = BTreeSet::new();
            let mut queue = VecDeque::from([root_id.clone()]);
            seen.insert(root_id.clone());
            while let Some(cur) = queue.pop_front() {
                for next in &adjacency[&cur] {
                    if seen.insert(next.clone()) {
                        queue.push_back(next.clone());
                    }
                }
            }
            if let Some(unreached) = concepts.iter().find(|c| !seen.contains(&c.id)) {
                return Err(Error::DisconnectedConcept {
                    id: unreached.id.to_string(),
                    root: root_id.to_string(),
                });
            }
        }

        Ok(Ontology {
            concepts,
            relations,
            root,
            root_edges,
            adjacency,
            by_id,
        })
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn concept(&self, id: &ConceptId) -> Option<&Concept> {
        self.by_id.get(id).map(|&i| &self.concepts[i])
    }

    pub fn contains(&self, id: &ConceptId) -> bool {
        self.by_id.contains_key(id)
    }

    /// Explicit relations as written in the ontology file.
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Implicit generalization edges attaching parentless concepts to the root.
    pub fn root_edges(&self) -> &[Relation] {
        &self.root_edges
    }

    pub fn root(&self) -> Option<&ConceptId> {
        self.root.as_ref()
    }

    /// Concepts within `max_distance` undirected hops of `id`, in
    /// breadth-first order with each distance layer sorted by id. The start
    /// concept and the root are never part of the result, though paths may
    /// pass through them.
    pub fn relatives(&self, id: &ConceptId, max_distance: usize) -> Result<Vec<ConceptId>> {
        if !self.contains(id) {
            return Err(Error::UnknownConcept { id: id.to_string() });
        }
        let mut out = Vec::new();
        let mut seen: BTreeSet<&ConceptId> = BTreeSet::from([id]);
        let mut frontier: BTreeSet<&ConceptId> = BTreeSet::from([id]);
        for _ in 0..max_distance {
            let mut next: BTreeSet<&ConceptId> = BTreeSet::new();
            for cur in frontier {
                for n in &self.adjacency[cur] {
                    if !seen.contains(n) {
                        next.insert(n);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            for n in &next {
                seen.insert(n);
                if self.root.as_ref() != Some(*n) {
                    out.push((*n).clone());
                }
            }
            frontier = next;
        }
        Ok(out)
    }
}

fn normalize_surface(s: &str) -> String {
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_ascii_lowercase()
}

fn check_generalization_acyclic<'a>(
    concepts: &[Concept],
    edges: impl Iterator<Item = &'a Relation>,
) -> Result<()> {
    let mut children: BTreeMap<&ConceptId, Vec<&ConceptId>> =
        concepts.iter().map(|c| (&c.id, Vec::new())).collect();
    for r in edges {
        if r.kind == RelationKind::Generalization {
            children.get_mut(&r.source).expect("validated").push(&r.target);
        }
    }
    // Iterative DFS with colors: 0 unvisited, 1 on stack, 2 done.
    let mut color: BTreeMap<&ConceptId, u8> = concepts.iter().map(|c| (&c.id, 0u8)).collect();
    for start in concepts {
        if color[&&start.id] != 0 {
            continue;
        }
        let mut stack: Vec<(&ConceptId, usize)> = vec![(&start.id, 0)];
        color.insert(&start.id, 1);
        while let Some((node, idx)) = stack.pop() {
            if idx < children[&node].len() {
                stack.push((node, idx + 1));
                let child = children[&node][idx];
                match color[&child] {
                    0 => {
                        color.insert(child, 1);
                        stack.push((child, 0));
                    }
                    1 => {
                        return Err(Error::GeneralizationCycle {
                            through: child.to_string(),
                        });
                    }
                    _ => {}
                }
            } else {
                color.insert(node, 2);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn testing_ontology() -> Ontology {
        let toml = r#"
            root = "ST"

            [[concepts]]
            id = "ST"
            title = "software testing"

            [[concepts]]
            id = "BBT"
            title = "black-box testing"
            aliases = ["black box testing", "black box"]

            [[concepts]]
            id = "WBT"
            title = "white-box testing"
            aliases = ["white box testing", "white box"]

            [[concepts]]
            id = "BVA"
            title = "boundary value analysis"

            [[concepts]]
            id = "EP"
            title = "equivalence partitioning"

            [[concepts]]
            id = "DT"
            title = "decision table testing"
            aliases = ["decision table"]

            [[concepts]]
            id = "BR"
            title = "branch coverage testing"
            aliases = ["branch coverage"]

            [[concepts]]
            id = "STA"
            title = "statement coverage testing"
            aliases = ["statement coverage"]

            [[relations]]
            kind = "generalization"
            source = "BBT"
            target = "BVA"

            [[relations]]
            kind = "generalization"
            source = "BBT"
            target = "EP"

            [[relations]]
            kind = "generalization"
            source = "BBT"
            target = "DT"

            [[relations]]
            kind = "generalization"
            source = "WBT"
            target = "BR"

            [[relations]]
            kind = "generalization"
            source = "WBT"
            target = "STA"
        "#;
        let file: OntologyFile = toml::from_str(toml).unwrap();
        Ontology::from_parts(file.concepts, file.relations, file.root).unwrap()
    }

    fn ids(v: &[ConceptId]) -> Vec<&str> {
        v.iter().map(|c| c.as_str()).collect()
    }

    #[test]
    fn seven_concept_file_gets_two_root_edges() {
        let o = testing_ontology();
        assert_eq!(o.concepts().len(), 8);
        assert_eq!(o.relations().len(), 5);
        let roots: Vec<&str> = o.root_edges().iter().map(|r| r.target.as_str()).collect();
        assert_eq!(roots, ["BBT", "WBT"]);
        assert!(o
            .root_edges()
            .iter()
            .all(|r| r.kind == RelationKind::Generalization));
    }

    #[test]
    fn relatives_at_distance_two_cross_the_root() {
        let o = testing_ontology();
        let r = o.relatives(&ConceptId::from("BBT"), 2).unwrap();
        assert_eq!(ids(&r), ["BVA", "DT", "EP", "WBT"]);
    }

    #[test]
    fn relatives_at_distance_one_stay_local() {
        let o = testing_ontology();
        let r = o.relatives(&ConceptId::from("BVA"), 1).unwrap();
        assert_eq!(ids(&r), ["BBT"]);
    }

    #[test]
    fn relatives_at_distance_three_reach_everything() {
        let o = testing_ontology();
        let r = o.relatives(&ConceptId::from("BBT"), 3).unwrap();
        assert_eq!(ids(&r), ["BVA", "DT", "EP", "WBT", "BR", "STA"]);
    }

    #[test]
    fn root_is_never_a_relative() {
        let o = testing_ontology();
        for c in o.concepts() {
            if Some(&c.id) == o.root() {
                continue;
            }
            let r = o.relatives(&c.id, 10).unwrap();
            assert!(!r.iter().any(|x| Some(x) == o.root()), "root leaked for {}", c.id);
            assert!(!r.contains(&c.id), "self leaked for {}", c.id);
        }
    }

    #[test]
    fn unknown_concept_is_rejected() {
        let o = testing_ontology();
        assert!(matches!(
            o.relatives(&ConceptId::from("NOPE"), 2),
            Err(Error::UnknownConcept { .. })
        ));
    }

    #[test]
    fn dangling_relation_is_rejected() {
        let err = Ontology::from_parts(
            vec![Concept {
                id: "A".into(),
                title: "alpha".into(),
                aliases: vec![],
            }],
            vec![Relation {
                kind: RelationKind::Association,
                source: "A".into(),
                target: "B".into(),
            }],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DanglingRelation { .. }));
    }

    #[test]
    fn duplicate_id_is_rejected() {
        let err = Ontology::from_parts(
            vec![
                Concept {
                    id: "A".into(),
                    title: "alpha".into(),
                    aliases: vec![],
                },
                Concept {
                    id: "A".into(),
                    title: "again".into(),
                    aliases: vec![],
                },
            ],
            vec![],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateConceptId { .. }));
    }

    #[test]
    fn alias_clash_is_rejected() {
        let err = Ontology::from_parts(
            vec![
                Concept {
                    id: "A".into(),
                    title: "alpha".into(),
                    aliases: vec!["shared name".into()],
                },
                Concept {
                    id: "B".into(),
                    title: "beta".into(),
                    aliases: vec!["Shared  Name".into()],
                },
            ],
            vec![],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConceptSurfaceClash { .. }));
    }

    #[test]
    fn generalization_cycle_is_rejected() {
        let mk = |id: &str| Concept {
            id: id.into(),
            title: id.to_lowercase(),
            aliases: vec![],
        };
        let edge = |s: &str, t: &str| Relation {
            kind: RelationKind::Generalization,
            source: s.into(),
            target: t.into(),
        };
        let err = Ontology::from_parts(
            vec![mk("A"), mk("B"), mk("C")],
            vec![edge("A", "B"), edge("B", "C"), edge("C", "A")],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::GeneralizationCycle { .. }));
    }

    #[test]
    fn single_concept_ontology_is_valid() {
        let o = Ontology::from_parts(
            vec![Concept {
                id: "A".into(),
                title: "alpha".into(),
                aliases: vec![],
            }],
            vec![],
            None,
        )
        .unwrap();
        assert!(o.relatives(&ConceptId::from("A"), 5).unwrap().is_empty());
    }

    #[test]
    fn zero_distance_has_no_relatives() {
        let o = testing_ontology();
        assert!(o.relatives(&ConceptId::from("BBT"), 0).unwrap().is_empty());
    }
}
