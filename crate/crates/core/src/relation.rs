//! Ongoing relations: tuples over fixed and ongoing attributes, each
//! carrying a reference-time attribute `RT`.
//!
//! `RT` holds the set of reference times at which the tuple belongs to the
//! instantiated relation. Base tuples start with the trivial reference time
//! `{[-inf,+inf)}`; query operators restrict it. Tuples whose reference
//! time becomes empty are deleted, so a stored tuple always has a non-empty
//! canonical `RT`.
//!
//! Binding a relation at `rt` instantiates every ongoing attribute and
//! omits the tuples whose `RT` does not contain `rt`; the result is a plain
//! set of fixed tuples.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::boolean::IntervalSet;
use crate::interval::{FixedInterval, OngoingInterval};
use crate::point::OngoingTimePoint;
use crate::tick::Tick;

/// Declared type of an attribute.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AttrType {
    Int,
    Text,
    Tick,
    Point,
    Interval,
}

impl AttrType {
    /// Tag used in CSV headers and diagnostics.
    pub fn tag(self) -> &'static str {
        match self {
            AttrType::Int => "int",
            AttrType::Text => "text",
            AttrType::Tick => "tick",
            AttrType::Point => "opoint",
            AttrType::Interval => "ointerval",
        }
    }

    pub fn from_tag(tag: &str) -> Option<AttrType> {
        Some(match tag {
            "int" => AttrType::Int,
            "text" => AttrType::Text,
            "tick" => AttrType::Tick,
            "opoint" => AttrType::Point,
            "ointerval" => AttrType::Interval,
            _ => return None,
        })
    }
}

impl fmt::Display for AttrType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// An attribute name with an optional relation qualifier (`B.VT`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AttrName {
    pub qualifier: Option<String>,
    pub name: String,
}

impl AttrName {
    pub fn bare(name: impl Into<String>) -> Self {
        AttrName {
            qualifier: None,
            name: name.into(),
        }
    }

    pub fn qualified(qualifier: impl Into<String>, name: impl Into<String>) -> Self {
        AttrName {
            qualifier: Some(qualifier.into()),
            name: name.into(),
        }
    }

    /// Does `self` (a reference as written in a query) name this attribute?
    pub fn matches(&self, attr: &AttrName) -> bool {
        self.name == attr.name
            && match &self.qualifier {
                None => true,
                Some(q) => attr.qualifier.as_deref() == Some(q.as_str()),
            }
    }
}

impl fmt::Display for AttrName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.qualifier {
            Some(q) => write!(f, "{q}.{}", self.name),
            None => f.write_str(&self.name),
        }
    }
}

impl fmt::Debug for AttrName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An attribute value. Comparisons across different tags are rejected at
/// plan time, not discovered at evaluation time.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum AttributeValue {
    Int(i64),
    Text(String),
    Tick(Tick),
    Point(OngoingTimePoint),
    Interval(OngoingInterval),
}

impl AttributeValue {
    pub fn attr_type(&self) -> AttrType {
        match self {
            AttributeValue::Int(_) => AttrType::Int,
            AttributeValue::Text(_) => AttrType::Text,
            AttributeValue::Tick(_) => AttrType::Tick,
            AttributeValue::Point(_) => AttrType::Point,
            AttributeValue::Interval(_) => AttrType::Interval,
        }
    }

    /// Instantiates the value at `rt`. Fixed values are untouched; ongoing
    /// points bind to ticks and ongoing intervals to fixed intervals.
    pub fn bind(&self, rt: Tick) -> FixedValue {
        match self {
            AttributeValue::Int(v) => FixedValue::Int(*v),
            AttributeValue::Text(v) => FixedValue::Text(v.clone()),
            AttributeValue::Tick(t) => FixedValue::Tick(*t),
            AttributeValue::Point(p) => FixedValue::Tick(p.bind(rt)),
            AttributeValue::Interval(i) => FixedValue::Interval(i.bind(rt)),
        }
    }

    pub(crate) fn collect_finite_ticks(&self, out: &mut Vec<i64>) {
        let mut push = |t: Tick| {
            if t.is_finite() {
                out.push(t.raw());
            }
        };
        match self {
            AttributeValue::Int(_) | AttributeValue::Text(_) => {}
            AttributeValue::Tick(t) => push(*t),
            AttributeValue::Point(p) => {
                push(p.lower());
                push(p.upper());
            }
            AttributeValue::Interval(i) => {
                for p in [i.start(), i.end()] {
                    push(p.lower());
                    push(p.upper());
                }
            }
        }
    }
}

impl fmt::Display for AttributeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttributeValue::Int(v) => write!(f, "{v}"),
            AttributeValue::Text(v) => f.write_str(v),
            AttributeValue::Tick(t) => write!(f, "{t}"),
            AttributeValue::Point(p) => write!(f, "{p}"),
            AttributeValue::Interval(i) => write!(f, "{i}"),
        }
    }
}

/// A fixed (instantiated) value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FixedValue {
    Int(i64),
    Text(String),
    Tick(Tick),
    Interval(FixedInterval),
}

impl FixedValue {
    /// Ordering for predicate evaluation: only values of the same tag are
    /// comparable. (The derived `Ord` is used for set storage only.)
    pub fn compare(&self, other: &FixedValue) -> Option<std::cmp::Ordering> {
        match (self, other) {
            (FixedValue::Int(a), FixedValue::Int(b)) => Some(a.cmp(b)),
            (FixedValue::Text(a), FixedValue::Text(b)) => Some(a.cmp(b)),
            (FixedValue::Tick(a), FixedValue::Tick(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }
}

impl fmt::Display for FixedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedValue::Int(v) => write!(f, "{v}"),
            FixedValue::Text(v) => f.write_str(v),
            FixedValue::Tick(t) => write!(f, "{t}"),
            FixedValue::Interval(i) => write!(f, "{i}"),
        }
    }
}

/// Errors raised when tuples and schemas do not line up.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RelationError {
    #[error("duplicate attribute name {0}")]
    DuplicateAttribute(String),
    #[error("attribute name RT is reserved for the reference time")]
    ReservedAttribute,
    #[error("tuple has {got} values but the schema has {expected} attributes")]
    WrongArity { expected: usize, got: usize },
    #[error("attribute {attr} expects {expected} but got {got}")]
    TypeMismatch {
        attr: String,
        expected: AttrType,
        got: AttrType,
    },
    #[error("stored tuples must have a non-empty reference time")]
    EmptyReferenceTime,
    #[error("operand schemas do not match: ({left}) vs ({right})")]
    SchemaMismatch { left: String, right: String },
}

/// An ordered list of named, typed attributes. The reference time is
/// implicit: it is not an attribute and cannot be declared as one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Schema {
    attrs: Vec<(AttrName, AttrType)>,
}

impl Schema {
    pub fn new(attrs: Vec<(AttrName, AttrType)>) -> Result<Self, RelationError> {
        let mut seen = HashSet::new();
        for (name, _) in &attrs {
            if name.name == "RT" {
                return Err(RelationError::ReservedAttribute);
            }
            if !seen.insert(name.clone()) {
                return Err(RelationError::DuplicateAttribute(name.to_string()));
            }
        }
        Ok(Schema { attrs })
    }

    /// Convenience constructor with bare attribute names.
    pub fn bare(attrs: &[(&str, AttrType)]) -> Self {
        Schema::new(
            attrs
                .iter()
                .map(|&(n, t)| (AttrName::bare(n), t))
                .collect(),
        )
        .expect("bare schema construction")
    }

    pub fn len(&self) -> usize {
        self.attrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attrs.is_empty()
    }

    pub fn attrs(&self) -> &[(AttrName, AttrType)] {
        &self.attrs
    }

    pub fn attr_types(&self) -> impl Iterator<Item = AttrType> + '_ {
        self.attrs.iter().map(|(_, t)| *t)
    }

    /// Stamps every attribute with a relation qualifier (done by `Scan`).
    pub fn qualify(&self, relation: &str) -> Schema {
        Schema {
            attrs: self
                .attrs
                .iter()
                .map(|(n, t)| (AttrName::qualified(relation, n.name.clone()), *t))
                .collect(),
        }
    }

    /// Resolves an attribute reference; bare names must be unambiguous.
    pub fn resolve(&self, reference: &AttrName) -> Result<usize, ResolveError> {
        let mut found = None;
        for (idx, (name, _)) in self.attrs.iter().enumerate() {
            if reference.matches(name) {
                if found.is_some() {
                    return Err(ResolveError::Ambiguous(reference.to_string()));
                }
                found = Some(idx);
            }
        }
        found.ok_or_else(|| ResolveError::Unknown(reference.to_string()))
    }

    pub fn attr_type_of(&self, idx: usize) -> AttrType {
        self.attrs[idx].1
    }

    /// Concatenates two schemas for a product; qualified names must stay
    /// unique.
    pub fn product(&self, other: &Schema) -> Result<Schema, RelationError> {
        let mut attrs = self.attrs.clone();
        attrs.extend(other.attrs.iter().cloned());
        Schema::new(attrs)
    }

    /// Union and difference require identical schemas: same arity, same
    /// attribute names, same types. Scan qualifiers may differ (`R.k` and
    /// `S.k` are compatible); the left schema names the result.
    pub fn union_compatible(&self, other: &Schema) -> Result<Schema, RelationError> {
        let compatible = self.attrs.len() == other.attrs.len()
            && self
                .attrs
                .iter()
                .zip(&other.attrs)
                .all(|((ln, lt), (rn, rt))| ln.name == rn.name && lt == rt);
        if compatible {
            Ok(self.clone())
        } else {
            Err(RelationError::SchemaMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, ty)) in self.attrs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{name}:{ty}")?;
        }
        Ok(())
    }
}

/// Attribute-reference resolution failure.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolveError {
    #[error("unknown attribute {0}")]
    Unknown(String),
    #[error("ambiguous attribute {0}; qualify it as Rel.Attr")]
    Ambiguous(String),
}

/// A tuple of an ongoing relation: attribute values plus the reference time.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tuple {
    pub values: Vec<AttributeValue>,
    pub rt: IntervalSet,
}

impl Tuple {
    pub fn new(values: Vec<AttributeValue>, rt: IntervalSet) -> Self {
        Tuple { values, rt }
    }

    /// A base tuple carries the trivial reference time `{[-inf,+inf)}`.
    pub fn base(values: Vec<AttributeValue>) -> Self {
        Tuple {
            values,
            rt: IntervalSet::full(),
        }
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ", RT={})", self.rt)
    }
}

/// An ongoing relation: a schema and a sequence of conforming tuples.
///
/// Tuple order is the insertion order; operators preserve it, which keeps
/// query output deterministic. Set semantics are restored by structural
/// deduplication on operator output.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    schema: Schema,
    tuples: Vec<Tuple>,
}

impl Relation {
    pub fn new(schema: Schema) -> Self {
        Relation {
            schema,
            tuples: Vec::new(),
        }
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    fn validate(&self, tuple: &Tuple) -> Result<(), RelationError> {
        if tuple.values.len() != self.schema.len() {
            return Err(RelationError::WrongArity {
                expected: self.schema.len(),
                got: tuple.values.len(),
            });
        }
        for (value, (name, ty)) in tuple.values.iter().zip(self.schema.attrs()) {
            if value.attr_type() != *ty {
                return Err(RelationError::TypeMismatch {
                    attr: name.to_string(),
                    expected: *ty,
                    got: value.attr_type(),
                });
            }
        }
        if tuple.rt.is_empty() {
            return Err(RelationError::EmptyReferenceTime);
        }
        Ok(())
    }

    /// Inserts a conforming tuple. Rejects empty reference times: such
    /// tuples are deleted, never stored.
    pub fn push(&mut self, tuple: Tuple) -> Result<(), RelationError> {
        self.validate(&tuple)?;
        self.tuples.push(tuple);
        Ok(())
    }

    /// Inserts a base tuple with the trivial reference time.
    pub fn push_base(&mut self, values: Vec<AttributeValue>) -> Result<(), RelationError> {
        self.push(Tuple::base(values))
    }

    /// Structural deduplication, keeping first occurrences in order.
    pub fn dedup(&mut self) {
        let mut seen = HashSet::with_capacity(self.tuples.len());
        self.tuples.retain(|t| seen.insert(t.clone()));
    }

    /// Instantiates the relation at `rt`: binds every attribute of every
    /// tuple whose reference time contains `rt`.
    pub fn bind(&self, rt: Tick) -> FixedRelation {
        let mut out = FixedRelation::new(self.schema.clone());
        for tuple in &self.tuples {
            if tuple.rt.bind(rt) {
                out.insert(FixedTuple::new(
                    tuple.values.iter().map(|v| v.bind(rt)).collect(),
                ));
            }
        }
        out
    }

    pub(crate) fn collect_finite_ticks(&self, out: &mut Vec<i64>) {
        for tuple in &self.tuples {
            for value in &tuple.values {
                value.collect_finite_ticks(out);
            }
            tuple.rt.collect_finite_ticks(out);
        }
    }
}

/// A fixed (instantiated) tuple.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FixedTuple {
    values: Vec<FixedValue>,
}

impl FixedTuple {
    pub fn new(values: Vec<FixedValue>) -> Self {
        FixedTuple { values }
    }

    pub fn values(&self) -> &[FixedValue] {
        &self.values
    }

    pub fn concat(&self, other: &FixedTuple) -> FixedTuple {
        let mut values = self.values.clone();
        values.extend(other.values.iter().cloned());
        FixedTuple { values }
    }
}

impl fmt::Display for FixedTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// A fixed relation: a set of fixed tuples. Two bound relations are equal
/// exactly when they contain the same tuples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedRelation {
    schema: Schema,
    tuples: BTreeSet<FixedTuple>,
}

impl FixedRelation {
    pub fn new(schema: Schema) -> Self {
        FixedRelation {
            schema,
            tuples: BTreeSet::new(),
        }
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn insert(&mut self, tuple: FixedTuple) {
        self.tuples.insert(tuple);
    }

    pub fn contains(&self, tuple: &FixedTuple) -> bool {
        self.tuples.contains(tuple)
    }

    pub fn tuples(&self) -> &BTreeSet<FixedTuple> {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }
}

/// A named collection of ongoing relations.
#[derive(Clone, Default, Debug)]
pub struct Catalog {
    relations: BTreeMap<String, Relation>,
}

impl Catalog {
    pub fn new() -> Self {
        Catalog::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, relation: Relation) {
        self.relations.insert(name.into(), relation);
    }

    pub fn get(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Relation)> {
        self.relations.iter()
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.relations.keys()
    }
}

/// A named collection of fixed relations, the bound image of a [`Catalog`].
#[derive(Clone, Default, Debug)]
pub struct FixedCatalog {
    relations: BTreeMap<String, FixedRelation>,
}

impl FixedCatalog {
    pub fn new() -> Self {
        FixedCatalog::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, relation: FixedRelation) {
        self.relations.insert(name.into(), relation);
    }

    pub fn get(&self, name: &str) -> Option<&FixedRelation> {
        self.relations.get(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bug_schema() -> Schema {
        Schema::bare(&[
            ("BID", AttrType::Int),
            ("C", AttrType::Text),
            ("VT", AttrType::Interval),
        ])
    }

    fn spam_bug() -> Vec<AttributeValue> {
        vec![
            AttributeValue::Int(500),
            AttributeValue::Text("Spam filter".into()),
            AttributeValue::Interval(OngoingInterval::new(
                OngoingTimePoint::fixed(Tick::new(125)),
                OngoingTimePoint::now(),
            )),
        ]
    }

    #[test]
    fn base_tuples_have_trivial_reference_time() {
        let mut rel = Relation::new(bug_schema());
        rel.push_base(spam_bug()).unwrap();
        assert_eq!(rel.tuples()[0].rt, IntervalSet::full());
        // An empty schema still gets the trivial reference time.
        let mut empty = Relation::new(Schema::bare(&[]));
        empty.push_base(vec![]).unwrap();
        assert_eq!(empty.tuples()[0].rt, IntervalSet::full());
    }

    #[test]
    fn push_rejects_nonconforming_tuples() {
        let mut rel = Relation::new(bug_schema());
        let err = rel.push_base(vec![AttributeValue::Int(1)]).unwrap_err();
        assert_eq!(err, RelationError::WrongArity { expected: 3, got: 1 });
        let err = rel
            .push_base(vec![
                AttributeValue::Text("oops".into()),
                AttributeValue::Text("Spam filter".into()),
                AttributeValue::Int(3),
            ])
            .unwrap_err();
        assert!(matches!(err, RelationError::TypeMismatch { .. }));
        let err = rel
            .push(Tuple::new(spam_bug(), IntervalSet::empty()))
            .unwrap_err();
        assert_eq!(err, RelationError::EmptyReferenceTime);
    }

    #[test]
    fn schema_rejects_duplicates_and_rt() {
        assert!(Schema::new(vec![
            (AttrName::bare("A"), AttrType::Int),
            (AttrName::bare("A"), AttrType::Int),
        ])
        .is_err());
        assert_eq!(
            Schema::new(vec![(AttrName::bare("RT"), AttrType::Int)]).unwrap_err(),
            RelationError::ReservedAttribute
        );
    }

    #[test]
    fn bind_drops_tuples_outside_rt() {
        let mut rel = Relation::new(bug_schema());
        rel.push(Tuple::new(
            spam_bug(),
            IntervalSet::new([(Tick::new(126), Tick::new(816))]),
        ))
        .unwrap();
        assert!(rel.bind(Tick::new(816)).is_empty());
        let bound = rel.bind(Tick::new(300));
        assert_eq!(bound.len(), 1);
        let tuple = bound.tuples().iter().next().unwrap();
        // The open end binds to the reference time.
        assert_eq!(
            tuple.values()[2],
            FixedValue::Interval(FixedInterval::new(Tick::new(125), Tick::new(300)))
        );
    }

    #[test]
    fn bind_of_trivial_relation_keeps_every_tuple() {
        let mut rel = Relation::new(bug_schema());
        rel.push_base(spam_bug()).unwrap();
        for rt in [Tick::NEG_INF, Tick::new(-40), Tick::new(0), Tick::new(99)] {
            assert_eq!(rel.bind(rt).len(), 1);
        }
    }

    #[test]
    fn resolution_rules() {
        let schema = bug_schema().qualify("B");
        assert!(schema.resolve(&AttrName::bare("VT")).is_ok());
        assert!(schema.resolve(&AttrName::qualified("B", "VT")).is_ok());
        assert_eq!(
            schema.resolve(&AttrName::bare("nope")),
            Err(ResolveError::Unknown("nope".into()))
        );
        let mut both = schema.attrs().to_vec();
        both.extend(bug_schema().qualify("P").attrs().iter().cloned());
        let product = Schema::new(both).unwrap();
        assert_eq!(
            product.resolve(&AttrName::bare("VT")),
            Err(ResolveError::Ambiguous("VT".into()))
        );
        assert!(product.resolve(&AttrName::qualified("P", "VT")).is_ok());
    }
}
