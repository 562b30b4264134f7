//! Domain knowledge inputs: the concept ontology and the annotated glossary.

mod glossary;
mod ontology;

pub use glossary::{Glossary, GlossaryEntry, GlossaryOptions, SemanticClass};
pub use ontology::{Concept, ConceptId, Ontology, Relation, RelationKind};
