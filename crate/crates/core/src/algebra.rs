//! Relational algebra on ongoing relations.
//!
//! Each operator restricts the reference time of its result tuples: a
//! selection sets `RT' = RT ∧ θ(r)` and drops tuples whose reference time
//! became empty, a product conjoins the operand reference times, and the
//! difference subtracts the reference times at which a matching tuple
//! exists on the right. Predicates on fixed attributes keep their ordinary
//! behavior: `true` lifts to the full reference-time set, `false` to the
//! empty one.
//!
//! Predicates are classified per conjunct at plan time as *fixed* (no
//! ongoing attribute involved) or *ongoing*. [`plan_optimize`] splits mixed
//! conjunctive selections so the fixed part runs first as a plain filter;
//! the join evaluator performs the same split internally.

use std::fmt;

use thiserror::Error;

use crate::boolean::IntervalSet;
use crate::interval::{FixedInterval, OngoingInterval};
use crate::point::OngoingTimePoint;
use crate::relation::{
    AttrName, AttrType, AttributeValue, Catalog, FixedTuple, FixedValue, Relation, RelationError,
    ResolveError, Schema, Tuple,
};
use crate::tick::Tick;

/// Errors detected while type-checking or evaluating a plan.
#[derive(Debug, Error)]
pub enum PlanError {
    #[error("unknown relation {0}")]
    UnknownRelation(String),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CompareOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl CompareOp {
    fn holds(self, ord: std::cmp::Ordering) -> bool {
        match self {
            CompareOp::Lt => ord.is_lt(),
            CompareOp::Le => ord.is_le(),
            CompareOp::Gt => ord.is_gt(),
            CompareOp::Ge => ord.is_ge(),
            CompareOp::Eq => ord.is_eq(),
            CompareOp::Ne => !ord.is_eq(),
        }
    }
}

impl fmt::Display for CompareOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompareOp::Lt => "<",
            CompareOp::Le => "<=",
            CompareOp::Gt => ">",
            CompareOp::Ge => ">=",
            CompareOp::Eq => "=",
            CompareOp::Ne => "!=",
        })
    }
}

/// Temporal predicates on ongoing time intervals.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TemporalOp {
    Before,
    Overlaps,
    Meets,
    Starts,
    During,
    Finishes,
    Equals,
}

impl fmt::Display for TemporalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TemporalOp::Before => "before",
            TemporalOp::Overlaps => "overlaps",
            TemporalOp::Meets => "meets",
            TemporalOp::Starts => "starts",
            TemporalOp::During => "during",
            TemporalOp::Finishes => "finishes",
            TemporalOp::Equals => "equals",
        })
    }
}

/// A scalar operand: attribute reference or literal. Bare tick literals are
/// represented as fixed ongoing points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ScalarExpr {
    Attr(AttrName),
    Int(i64),
    Text(String),
    Point(OngoingTimePoint),
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarExpr::Attr(a) => write!(f, "{a}"),
            ScalarExpr::Int(v) => write!(f, "{v}"),
            ScalarExpr::Text(v) => write!(f, "'{}'", v.replace('\'', "''")),
            ScalarExpr::Point(p) => write!(f, "{p}"),
        }
    }
}

/// An interval operand: attribute reference or interval literal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IntervalOperand {
    Attr(AttrName),
    Literal(OngoingInterval),
}

impl fmt::Display for IntervalOperand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalOperand::Attr(a) => write!(f, "{a}"),
            IntervalOperand::Literal(i) => write!(f, "{i}"),
        }
    }
}

/// A predicate expression tree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Predicate {
    Literal(bool),
    Compare {
        op: CompareOp,
        lhs: ScalarExpr,
        rhs: ScalarExpr,
    },
    Temporal {
        op: TemporalOp,
        lhs: IntervalOperand,
        rhs: IntervalOperand,
    },
    And(Box<Predicate>, Box<Predicate>),
    Or(Box<Predicate>, Box<Predicate>),
    Not(Box<Predicate>),
}

impl Predicate {
    pub fn and(self, other: Predicate) -> Predicate {
        Predicate::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Predicate) -> Predicate {
        Predicate::Or(Box::new(self), Box::new(other))
    }

    pub fn negate(self) -> Predicate {
        Predicate::Not(Box::new(self))
    }
}

/// A projection item: a carried attribute or one of the computed ongoing
/// expressions (interval intersection, point min/max).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Projection {
    Attr {
        attr: AttrName,
        alias: Option<String>,
    },
    Intersect {
        lhs: IntervalOperand,
        rhs: IntervalOperand,
        alias: Option<String>,
    },
    PointMin {
        lhs: ScalarExpr,
        rhs: ScalarExpr,
        alias: Option<String>,
    },
    PointMax {
        lhs: ScalarExpr,
        rhs: ScalarExpr,
        alias: Option<String>,
    },
}

impl Projection {
    pub fn attr(attr: AttrName) -> Projection {
        Projection::Attr { attr, alias: None }
    }

    /// Output attribute name: the alias when given, the source name for
    /// plain attributes, a synthesized `op(lhs,rhs)` name otherwise.
    pub fn output_name(&self) -> AttrName {
        match self {
            Projection::Attr { attr, alias } => match alias {
                Some(alias) => AttrName::bare(alias.clone()),
                None => attr.clone(),
            },
            Projection::Intersect { lhs, rhs, alias } => synthesized(alias, "intersect", lhs, rhs),
            Projection::PointMin { lhs, rhs, alias } => synthesized(alias, "min", lhs, rhs),
            Projection::PointMax { lhs, rhs, alias } => synthesized(alias, "max", lhs, rhs),
        }
    }
}

fn synthesized(
    alias: &Option<String>,
    op: &str,
    lhs: &impl fmt::Display,
    rhs: &impl fmt::Display,
) -> AttrName {
    match alias {
        Some(alias) => AttrName::bare(alias.clone()),
        None => AttrName::bare(format!("{op}({lhs},{rhs})")),
    }
}

/// An algebra expression tree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QueryPlan {
    Scan(String),
    Select {
        pred: Predicate,
        input: Box<QueryPlan>,
    },
    Project {
        items: Vec<Projection>,
        input: Box<QueryPlan>,
    },
    Product {
        left: Box<QueryPlan>,
        right: Box<QueryPlan>,
    },
    Join {
        pred: Predicate,
        left: Box<QueryPlan>,
        right: Box<QueryPlan>,
    },
    Union {
        left: Box<QueryPlan>,
        right: Box<QueryPlan>,
    },
    Difference {
        left: Box<QueryPlan>,
        right: Box<QueryPlan>,
    },
}

impl QueryPlan {
    pub fn select(pred: Predicate, input: QueryPlan) -> QueryPlan {
        QueryPlan::Select {
            pred,
            input: Box::new(input),
        }
    }

    pub fn project(items: Vec<Projection>, input: QueryPlan) -> QueryPlan {
        QueryPlan::Project {
            items,
            input: Box::new(input),
        }
    }

    pub fn join(pred: Predicate, left: QueryPlan, right: QueryPlan) -> QueryPlan {
        QueryPlan::Join {
            pred,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn product(left: QueryPlan, right: QueryPlan) -> QueryPlan {
        QueryPlan::Product {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn union(left: QueryPlan, right: QueryPlan) -> QueryPlan {
        QueryPlan::Union {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn difference(left: QueryPlan, right: QueryPlan) -> QueryPlan {
        QueryPlan::Difference {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// Names of all relations scanned anywhere in the plan.
    pub fn scanned_relations(&self) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        self.visit(&mut |plan| {
            if let QueryPlan::Scan(name) = plan {
                out.insert(name.clone());
            }
        });
        out
    }

    fn visit(&self, f: &mut dyn FnMut(&QueryPlan)) {
        f(self);
        match self {
            QueryPlan::Scan(_) => {}
            QueryPlan::Select { input, .. } | QueryPlan::Project { input, .. } => input.visit(f),
            QueryPlan::Product { left, right }
            | QueryPlan::Join { left, right, .. }
            | QueryPlan::Union { left, right }
            | QueryPlan::Difference { left, right } => {
                left.visit(f);
                right.visit(f);
            }
        }
    }

    /// Finite ticks in the plan's literals, for breakpoint derivation.
    pub fn collect_finite_ticks(&self, out: &mut Vec<i64>) {
        self.visit(&mut |plan| match plan {
            QueryPlan::Select { pred, .. } | QueryPlan::Join { pred, .. } => {
                predicate_ticks(pred, out)
            }
            QueryPlan::Project { items, .. } => {
                for item in items {
                    projection_ticks(item, out);
                }
            }
            _ => {}
        });
    }

    /// Replaces every point and interval literal by its binding at `rt`.
    /// This is the query-side half of bind-then-evaluate: `now` in a query
    /// instantiates like `now` in the data.
    pub fn bind_scalar_literals(&self, rt: Tick) -> QueryPlan {
        match self {
            QueryPlan::Scan(name) => QueryPlan::Scan(name.clone()),
            QueryPlan::Select { pred, input } => QueryPlan::Select {
                pred: bind_predicate(pred, rt),
                input: Box::new(input.bind_scalar_literals(rt)),
            },
            QueryPlan::Project { items, input } => QueryPlan::Project {
                items: items.iter().map(|i| bind_projection(i, rt)).collect(),
                input: Box::new(input.bind_scalar_literals(rt)),
            },
            QueryPlan::Product { left, right } => QueryPlan::Product {
                left: Box::new(left.bind_scalar_literals(rt)),
                right: Box::new(right.bind_scalar_literals(rt)),
            },
            QueryPlan::Join { pred, left, right } => QueryPlan::Join {
                pred: bind_predicate(pred, rt),
                left: Box::new(left.bind_scalar_literals(rt)),
                right: Box::new(right.bind_scalar_literals(rt)),
            },
            QueryPlan::Union { left, right } => QueryPlan::Union {
                left: Box::new(left.bind_scalar_literals(rt)),
                right: Box::new(right.bind_scalar_literals(rt)),
            },
            QueryPlan::Difference { left, right } => QueryPlan::Difference {
                left: Box::new(left.bind_scalar_literals(rt)),
                right: Box::new(right.bind_scalar_literals(rt)),
            },
        }
    }
}

fn predicate_ticks(pred: &Predicate, out: &mut Vec<i64>) {
    match pred {
        Predicate::Literal(_) => {}
        Predicate::Compare { lhs, rhs, .. } => {
            scalar_ticks(lhs, out);
            scalar_ticks(rhs, out);
        }
        Predicate::Temporal { lhs, rhs, .. } => {
            operand_ticks(lhs, out);
            operand_ticks(rhs, out);
        }
        Predicate::And(a, b) | Predicate::Or(a, b) => {
            predicate_ticks(a, out);
            predicate_ticks(b, out);
        }
        Predicate::Not(a) => predicate_ticks(a, out),
    }
}

fn projection_ticks(item: &Projection, out: &mut Vec<i64>) {
    match item {
        Projection::Attr { .. } => {}
        Projection::Intersect { lhs, rhs, .. } => {
            operand_ticks(lhs, out);
            operand_ticks(rhs, out);
        }
        Projection::PointMin { lhs, rhs, .. } | Projection::PointMax { lhs, rhs, .. } => {
            scalar_ticks(lhs, out);
            scalar_ticks(rhs, out);
        }
    }
}

fn scalar_ticks(expr: &ScalarExpr, out: &mut Vec<i64>) {
    if let ScalarExpr::Point(p) = expr {
        for t in [p.lower(), p.upper()] {
            if t.is_finite() {
                out.push(t.raw());
            }
        }
    }
}

fn operand_ticks(operand: &IntervalOperand, out: &mut Vec<i64>) {
    if let IntervalOperand::Literal(i) = operand {
        for p in [i.start(), i.end()] {
            for t in [p.lower(), p.upper()] {
                if t.is_finite() {
                    out.push(t.raw());
                }
            }
        }
    }
}

fn bind_predicate(pred: &Predicate, rt: Tick) -> Predicate {
    match pred {
        Predicate::Literal(v) => Predicate::Literal(*v),
        Predicate::Compare { op, lhs, rhs } => Predicate::Compare {
            op: *op,
            lhs: bind_scalar(lhs, rt),
            rhs: bind_scalar(rhs, rt),
        },
        Predicate::Temporal { op, lhs, rhs } => Predicate::Temporal {
            op: *op,
            lhs: bind_operand(lhs, rt),
            rhs: bind_operand(rhs, rt),
        },
        Predicate::And(a, b) => bind_predicate(a, rt).and(bind_predicate(b, rt)),
        Predicate::Or(a, b) => bind_predicate(a, rt).or(bind_predicate(b, rt)),
        Predicate::Not(a) => bind_predicate(a, rt).negate(),
    }
}

fn bind_projection(item: &Projection, rt: Tick) -> Projection {
    match item {
        Projection::Attr { attr, alias } => Projection::Attr {
            attr: attr.clone(),
            alias: alias.clone(),
        },
        Projection::Intersect { lhs, rhs, alias } => Projection::Intersect {
            lhs: bind_operand(lhs, rt),
            rhs: bind_operand(rhs, rt),
            alias: alias.clone(),
        },
        Projection::PointMin { lhs, rhs, alias } => Projection::PointMin {
            lhs: bind_scalar(lhs, rt),
            rhs: bind_scalar(rhs, rt),
            alias: alias.clone(),
        },
        Projection::PointMax { lhs, rhs, alias } => Projection::PointMax {
            lhs: bind_scalar(lhs, rt),
            rhs: bind_scalar(rhs, rt),
            alias: alias.clone(),
        },
    }
}

fn bind_scalar(expr: &ScalarExpr, rt: Tick) -> ScalarExpr {
    match expr {
        ScalarExpr::Point(p) => ScalarExpr::Point(OngoingTimePoint::fixed(p.bind(rt))),
        other => other.clone(),
    }
}

fn bind_operand(operand: &IntervalOperand, rt: Tick) -> IntervalOperand {
    match operand {
        IntervalOperand::Literal(i) => IntervalOperand::Literal(OngoingInterval::fixed(
            i.start().bind(rt),
            i.end().bind(rt),
        )),
        other => other.clone(),
    }
}

// ---------------------------------------------------------------------------
// Type checking
// ---------------------------------------------------------------------------

/// Scalar type categories for comparison compatibility.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum ScalarCategory {
    Int,
    Text,
    Temporal,
}

fn scalar_category(expr: &ScalarExpr, schema: &Schema) -> Result<ScalarCategory, PlanError> {
    match expr {
        ScalarExpr::Int(_) => Ok(ScalarCategory::Int),
        ScalarExpr::Text(_) => Ok(ScalarCategory::Text),
        ScalarExpr::Point(_) => Ok(ScalarCategory::Temporal),
        ScalarExpr::Attr(name) => {
            let idx = schema.resolve(name)?;
            match schema.attr_type_of(idx) {
                AttrType::Int => Ok(ScalarCategory::Int),
                AttrType::Text => Ok(ScalarCategory::Text),
                AttrType::Tick | AttrType::Point => Ok(ScalarCategory::Temporal),
                AttrType::Interval => Err(PlanError::TypeMismatch(format!(
                    "interval attribute {name} cannot be compared with a scalar operator; \
                     use a temporal predicate such as overlaps or equals"
                ))),
            }
        }
    }
}

fn check_interval_operand(operand: &IntervalOperand, schema: &Schema) -> Result<(), PlanError> {
    match operand {
        IntervalOperand::Literal(_) => Ok(()),
        IntervalOperand::Attr(name) => {
            let idx = schema.resolve(name)?;
            if schema.attr_type_of(idx) == AttrType::Interval {
                Ok(())
            } else {
                Err(PlanError::TypeMismatch(format!(
                    "attribute {name} has type {} but a temporal predicate needs ointerval",
                    schema.attr_type_of(idx)
                )))
            }
        }
    }
}

/// Validates a predicate against a schema.
pub fn check_predicate(pred: &Predicate, schema: &Schema) -> Result<(), PlanError> {
    match pred {
        Predicate::Literal(_) => Ok(()),
        Predicate::Compare { lhs, rhs, .. } => {
            let l = scalar_category(lhs, schema)?;
            let r = scalar_category(rhs, schema)?;
            if l == r {
                Ok(())
            } else {
                Err(PlanError::TypeMismatch(format!(
                    "cannot compare {lhs} ({l:?}) with {rhs} ({r:?})"
                )))
            }
        }
        Predicate::Temporal { lhs, rhs, .. } => {
            check_interval_operand(lhs, schema)?;
            check_interval_operand(rhs, schema)
        }
        Predicate::And(a, b) | Predicate::Or(a, b) => {
            check_predicate(a, schema)?;
            check_predicate(b, schema)
        }
        Predicate::Not(a) => check_predicate(a, schema),
    }
}

/// Is any ongoing attribute or non-fixed literal involved? Fixed conjuncts
/// are reference-time independent and can run as plain filters.
pub fn predicate_is_ongoing(pred: &Predicate, schema: &Schema) -> Result<bool, PlanError> {
    match pred {
        Predicate::Literal(_) => Ok(false),
        Predicate::Compare { lhs, rhs, .. } => {
            Ok(scalar_is_ongoing(lhs, schema)? || scalar_is_ongoing(rhs, schema)?)
        }
        Predicate::Temporal { lhs, rhs, .. } => {
            Ok(operand_is_ongoing(lhs, schema)? || operand_is_ongoing(rhs, schema)?)
        }
        Predicate::And(a, b) | Predicate::Or(a, b) => {
            Ok(predicate_is_ongoing(a, schema)? || predicate_is_ongoing(b, schema)?)
        }
        Predicate::Not(a) => predicate_is_ongoing(a, schema),
    }
}

fn scalar_is_ongoing(expr: &ScalarExpr, schema: &Schema) -> Result<bool, PlanError> {
    match expr {
        ScalarExpr::Int(_) | ScalarExpr::Text(_) => Ok(false),
        ScalarExpr::Point(p) => Ok(!p.is_fixed()),
        ScalarExpr::Attr(name) => {
            let idx = schema.resolve(name)?;
            Ok(matches!(
                schema.attr_type_of(idx),
                AttrType::Point | AttrType::Interval
            ))
        }
    }
}

fn operand_is_ongoing(operand: &IntervalOperand, schema: &Schema) -> Result<bool, PlanError> {
    match operand {
        IntervalOperand::Literal(i) => Ok(!(i.start().is_fixed() && i.end().is_fixed())),
        IntervalOperand::Attr(name) => {
            schema.resolve(name)?;
            // Interval attributes are the only ones that type-check here,
            // and their values may be ongoing.
            Ok(true)
        }
    }
}

/// Output schema of a projection list.
pub fn project_schema(items: &[Projection], input: &Schema) -> Result<Schema, PlanError> {
    let mut attrs = Vec::with_capacity(items.len());
    for item in items {
        let ty = match item {
            Projection::Attr { attr, .. } => {
                let idx = input.resolve(attr)?;
                input.attr_type_of(idx)
            }
            Projection::Intersect { lhs, rhs, .. } => {
                check_interval_operand(lhs, input)?;
                check_interval_operand(rhs, input)?;
                AttrType::Interval
            }
            Projection::PointMin { lhs, rhs, .. } | Projection::PointMax { lhs, rhs, .. } => {
                for side in [lhs, rhs] {
                    if scalar_category(side, input)? != ScalarCategory::Temporal {
                        return Err(PlanError::TypeMismatch(format!(
                            "min/max needs time point operands, got {side}"
                        )));
                    }
                }
                AttrType::Point
            }
        };
        attrs.push((item.output_name(), ty));
    }
    Ok(Schema::new(attrs)?)
}

/// Computes the output schema of a plan, validating scans, attribute
/// references, predicate types, and schema compatibility along the way.
pub fn output_schema(plan: &QueryPlan, catalog: &Catalog) -> Result<Schema, PlanError> {
    match plan {
        QueryPlan::Scan(name) => catalog
            .get(name)
            .map(|rel| rel.schema().qualify(name))
            .ok_or_else(|| PlanError::UnknownRelation(name.clone())),
        QueryPlan::Select { pred, input } => {
            let schema = output_schema(input, catalog)?;
            check_predicate(pred, &schema)?;
            Ok(schema)
        }
        QueryPlan::Project { items, input } => {
            let schema = output_schema(input, catalog)?;
            project_schema(items, &schema)
        }
        QueryPlan::Product { left, right } => {
            let l = output_schema(left, catalog)?;
            let r = output_schema(right, catalog)?;
            Ok(l.product(&r)?)
        }
        QueryPlan::Join { pred, left, right } => {
            let l = output_schema(left, catalog)?;
            let r = output_schema(right, catalog)?;
            let schema = l.product(&r)?;
            check_predicate(pred, &schema)?;
            Ok(schema)
        }
        QueryPlan::Union { left, right } | QueryPlan::Difference { left, right } => {
            let l = output_schema(left, catalog)?;
            let r = output_schema(right, catalog)?;
            Ok(l.union_compatible(&r)?)
        }
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// A tuple, or a pair of tuples seen as one concatenated tuple.
#[derive(Clone, Copy)]
struct TupleView<'a> {
    left: &'a Tuple,
    right: Option<&'a Tuple>,
}

impl<'a> TupleView<'a> {
    fn single(tuple: &'a Tuple) -> Self {
        TupleView {
            left: tuple,
            right: None,
        }
    }

    fn pair(left: &'a Tuple, right: &'a Tuple) -> Self {
        TupleView {
            left,
            right: Some(right),
        }
    }

    fn value(&self, idx: usize) -> &'a AttributeValue {
        match self.right {
            Some(right) if idx >= self.left.values.len() => {
                &right.values[idx - self.left.values.len()]
            }
            _ => &self.left.values[idx],
        }
    }
}

enum Scalar<'a> {
    Int(i64),
    Text(&'a str),
    Point(OngoingTimePoint),
}

fn eval_scalar<'a>(
    expr: &'a ScalarExpr,
    schema: &Schema,
    view: &TupleView<'a>,
) -> Result<Scalar<'a>, PlanError> {
    match expr {
        ScalarExpr::Int(v) => Ok(Scalar::Int(*v)),
        ScalarExpr::Text(v) => Ok(Scalar::Text(v)),
        ScalarExpr::Point(p) => Ok(Scalar::Point(*p)),
        ScalarExpr::Attr(name) => {
            let idx = schema.resolve(name)?;
            match view.value(idx) {
                AttributeValue::Int(v) => Ok(Scalar::Int(*v)),
                AttributeValue::Text(v) => Ok(Scalar::Text(v)),
                AttributeValue::Tick(t) => Ok(Scalar::Point(OngoingTimePoint::fixed(*t))),
                AttributeValue::Point(p) => Ok(Scalar::Point(*p)),
                AttributeValue::Interval(_) => Err(PlanError::Internal(format!(
                    "interval attribute {name} reached scalar evaluation"
                ))),
            }
        }
    }
}

fn eval_interval_operand(
    operand: &IntervalOperand,
    schema: &Schema,
    view: &TupleView<'_>,
) -> Result<OngoingInterval, PlanError> {
    match operand {
        IntervalOperand::Literal(i) => Ok(*i),
        IntervalOperand::Attr(name) => {
            let idx = schema.resolve(name)?;
            match view.value(idx) {
                AttributeValue::Interval(i) => Ok(*i),
                other => Err(PlanError::Internal(format!(
                    "attribute {name} expected an interval, found {other}"
                ))),
            }
        }
    }
}

fn eval_predicate_view(
    pred: &Predicate,
    schema: &Schema,
    view: &TupleView<'_>,
) -> Result<IntervalSet, PlanError> {
    match pred {
        Predicate::Literal(v) => Ok(IntervalSet::lift(*v)),
        Predicate::And(a, b) => {
            let l = eval_predicate_view(a, schema, view)?;
            if l.is_empty() {
                return Ok(l);
            }
            Ok(l.and(&eval_predicate_view(b, schema, view)?))
        }
        Predicate::Or(a, b) => {
            let l = eval_predicate_view(a, schema, view)?;
            Ok(l.or(&eval_predicate_view(b, schema, view)?))
        }
        Predicate::Not(a) => Ok(eval_predicate_view(a, schema, view)?.negate()),
        Predicate::Compare { op, lhs, rhs } => {
            let l = eval_scalar(lhs, schema, view)?;
            let r = eval_scalar(rhs, schema, view)?;
            match (l, r) {
                (Scalar::Int(a), Scalar::Int(b)) => Ok(IntervalSet::lift(op.holds(a.cmp(&b)))),
                (Scalar::Text(a), Scalar::Text(b)) => Ok(IntervalSet::lift(op.holds(a.cmp(b)))),
                (Scalar::Point(p), Scalar::Point(q)) => Ok(match op {
                    CompareOp::Lt => p.less_than(q),
                    CompareOp::Le => p.less_equal(q),
                    CompareOp::Gt => p.greater_than(q),
                    CompareOp::Ge => p.greater_equal(q),
                    CompareOp::Eq => p.equals(q),
                    CompareOp::Ne => p.not_equals(q),
                }),
                _ => Err(PlanError::Internal(
                    "mixed scalar categories survived type checking".into(),
                )),
            }
        }
        Predicate::Temporal { op, lhs, rhs } => {
            let l = eval_interval_operand(lhs, schema, view)?;
            let r = eval_interval_operand(rhs, schema, view)?;
            Ok(match op {
                TemporalOp::Before => l.before(r),
                TemporalOp::Overlaps => l.overlaps(r),
                TemporalOp::Meets => l.meets(r),
                TemporalOp::Starts => l.starts(r),
                TemporalOp::During => l.during(r),
                TemporalOp::Finishes => l.finishes(r),
                TemporalOp::Equals => l.equals(r),
            })
        }
    }
}

/// Evaluates a predicate on a single tuple, producing the set of reference
/// times at which it holds.
pub fn eval_predicate(
    pred: &Predicate,
    schema: &Schema,
    tuple: &Tuple,
) -> Result<IntervalSet, PlanError> {
    eval_predicate_view(pred, schema, &TupleView::single(tuple))
}

/// Evaluates a reference-time-independent predicate to a plain boolean.
fn eval_fixed_predicate(
    pred: &Predicate,
    schema: &Schema,
    view: &TupleView<'_>,
) -> Result<bool, PlanError> {
    let truth = eval_predicate_view(pred, schema, view)?;
    Ok(!truth.is_empty())
}

/// Splits a conjunction tree into its conjuncts.
fn flatten_and(pred: &Predicate) -> Vec<&Predicate> {
    let mut out = Vec::new();
    fn walk<'a>(pred: &'a Predicate, out: &mut Vec<&'a Predicate>) {
        match pred {
            Predicate::And(a, b) => {
                walk(a, out);
                walk(b, out);
            }
            other => out.push(other),
        }
    }
    walk(pred, &mut out);
    out
}

fn rebuild_and(conjuncts: &[&Predicate]) -> Predicate {
    let mut iter = conjuncts.iter();
    let first = (*iter.next().expect("non-empty conjunct list")).clone();
    iter.fold(first, |acc, c| acc.and((*c).clone()))
}

/// Evaluates a plan on a catalog of ongoing relations.
pub fn eval(plan: &QueryPlan, catalog: &Catalog) -> Result<Relation, PlanError> {
    match plan {
        QueryPlan::Scan(name) => {
            let rel = catalog
                .get(name)
                .ok_or_else(|| PlanError::UnknownRelation(name.clone()))?;
            let mut out = Relation::new(rel.schema().qualify(name));
            for tuple in rel.tuples() {
                out.push(tuple.clone())?;
            }
            Ok(out)
        }
        QueryPlan::Select { pred, input } => {
            let rel = eval(input, catalog)?;
            check_predicate(pred, rel.schema())?;
            let ongoing = predicate_is_ongoing(pred, rel.schema())?;
            let mut out = Relation::new(rel.schema().clone());
            for tuple in rel.tuples() {
                let view = TupleView::single(tuple);
                if !ongoing {
                    // Fixed predicate: plain filter, reference time untouched.
                    if eval_fixed_predicate(pred, rel.schema(), &view)? {
                        out.push(tuple.clone())?;
                    }
                } else {
                    let truth = eval_predicate_view(pred, rel.schema(), &view)?;
                    let rt = tuple.rt.and(&truth);
                    if !rt.is_empty() {
                        out.push(Tuple::new(tuple.values.clone(), rt))?;
                    }
                }
            }
            out.dedup();
            Ok(out)
        }
        QueryPlan::Project { items, input } => {
            let rel = eval(input, catalog)?;
            let schema = project_schema(items, rel.schema())?;
            let mut out = Relation::new(schema);
            for tuple in rel.tuples() {
                let view = TupleView::single(tuple);
                let values = items
                    .iter()
                    .map(|item| eval_projection(item, rel.schema(), &view))
                    .collect::<Result<Vec<_>, _>>()?;
                out.push(Tuple::new(values, tuple.rt.clone()))?;
            }
            out.dedup();
            Ok(out)
        }
        QueryPlan::Product { left, right } => {
            let l = eval(left, catalog)?;
            let r = eval(right, catalog)?;
            let schema = l.schema().product(r.schema())?;
            let mut out = Relation::new(schema);
            for lt in l.tuples() {
                for rt_tuple in r.tuples() {
                    let rt = lt.rt.and(&rt_tuple.rt);
                    if rt.is_empty() {
                        continue;
                    }
                    let mut values = lt.values.clone();
                    values.extend(rt_tuple.values.iter().cloned());
                    out.push(Tuple::new(values, rt))?;
                }
            }
            out.dedup();
            Ok(out)
        }
        QueryPlan::Join { pred, left, right } => {
            let l = eval(left, catalog)?;
            let r = eval(right, catalog)?;
            let schema = l.schema().product(r.schema())?;
            check_predicate(pred, &schema)?;
            // Split once per join: fixed conjuncts gate the pair before any
            // reference-time work happens.
            let conjuncts = flatten_and(pred);
            let mut fixed_parts = Vec::new();
            let mut ongoing_parts = Vec::new();
            for c in conjuncts {
                if predicate_is_ongoing(c, &schema)? {
                    ongoing_parts.push(c);
                } else {
                    fixed_parts.push(c);
                }
            }
            let mut out = Relation::new(schema.clone());
            for lt in l.tuples() {
                for rt_tuple in r.tuples() {
                    let view = TupleView::pair(lt, rt_tuple);
                    let mut fixed_pass = true;
                    for c in &fixed_parts {
                        if !eval_fixed_predicate(c, &schema, &view)? {
                            fixed_pass = false;
                            break;
                        }
                    }
                    if !fixed_pass {
                        continue;
                    }
                    let mut rt = lt.rt.and(&rt_tuple.rt);
                    for c in &ongoing_parts {
                        if rt.is_empty() {
                            break;
                        }
                        rt = rt.and(&eval_predicate_view(c, &schema, &view)?);
                    }
                    if rt.is_empty() {
                        continue;
                    }
                    let mut values = lt.values.clone();
                    values.extend(rt_tuple.values.iter().cloned());
                    out.push(Tuple::new(values, rt))?;
                }
            }
            out.dedup();
            Ok(out)
        }
        QueryPlan::Union { left, right } => {
            let l = eval(left, catalog)?;
            let r = eval(right, catalog)?;
            let schema = l.schema().union_compatible(r.schema())?;
            let mut out = Relation::new(schema);
            for tuple in l.tuples().iter().chain(r.tuples()) {
                out.push(tuple.clone())?;
            }
            out.dedup();
            Ok(out)
        }
        QueryPlan::Difference { left, right } => {
            let l = eval(left, catalog)?;
            let r = eval(right, catalog)?;
            let schema = l.schema().union_compatible(r.schema())?;
            let mut out = Relation::new(schema.clone());
            for lt in l.tuples() {
                // Subtract the reference times at which some right tuple has
                // bind-equal attributes and contains rt itself.
                let mut matched = IntervalSet::empty();
                for rt_tuple in r.tuples() {
                    let eq = tuples_bind_equal(lt, rt_tuple);
                    if eq.is_empty() {
                        continue;
                    }
                    matched = matched.or(&eq.and(&rt_tuple.rt));
                }
                let rt = lt.rt.and(&matched.negate());
                if !rt.is_empty() {
                    out.push(Tuple::new(lt.values.clone(), rt))?;
                }
            }
            out.dedup();
            Ok(out)
        }
    }
}

/// The reference times at which two conforming tuples have bind-equal
/// attribute values.
///
/// Ongoing points compare with per-reference-time equality; ongoing
/// intervals compare endpoint-wise, except that two intervals bound to
/// empty intervals count as equal (an empty interval denotes the empty set
/// of time points, whatever its raw bounds). The fixed side of the
/// differential check uses the same convention via
/// [`FixedInterval`](crate::interval::FixedInterval) equality.
fn tuples_bind_equal(left: &Tuple, right: &Tuple) -> IntervalSet {
    let mut acc = IntervalSet::full();
    for (l, r) in left.values.iter().zip(&right.values) {
        let leaf = match (l, r) {
            (AttributeValue::Int(a), AttributeValue::Int(b)) => IntervalSet::lift(a == b),
            (AttributeValue::Text(a), AttributeValue::Text(b)) => IntervalSet::lift(a == b),
            (AttributeValue::Tick(a), AttributeValue::Tick(b)) => IntervalSet::lift(a == b),
            (AttributeValue::Point(p), AttributeValue::Point(q)) => p.equals(*q),
            (AttributeValue::Interval(i), AttributeValue::Interval(j)) => {
                let endpoints = i.start().equals(j.start()).and(&i.end().equals(j.end()));
                let both_empty = i.nonempty().negate().and(&j.nonempty().negate());
                endpoints.or(&both_empty)
            }
            _ => IntervalSet::empty(),
        };
        acc = acc.and(&leaf);
        if acc.is_empty() {
            break;
        }
    }
    acc
}

fn eval_projection(
    item: &Projection,
    schema: &Schema,
    view: &TupleView<'_>,
) -> Result<AttributeValue, PlanError> {
    match item {
        Projection::Attr { attr, .. } => {
            let idx = schema.resolve(attr)?;
            Ok(view.value(idx).clone())
        }
        Projection::Intersect { lhs, rhs, .. } => {
            let l = eval_interval_operand(lhs, schema, view)?;
            let r = eval_interval_operand(rhs, schema, view)?;
            Ok(AttributeValue::Interval(l.intersect(r)))
        }
        Projection::PointMin { lhs, rhs, .. } => {
            let (l, r) = eval_point_pair(lhs, rhs, schema, view)?;
            Ok(AttributeValue::Point(l.min(r)))
        }
        Projection::PointMax { lhs, rhs, .. } => {
            let (l, r) = eval_point_pair(lhs, rhs, schema, view)?;
            Ok(AttributeValue::Point(l.max(r)))
        }
    }
}

fn eval_point_pair(
    lhs: &ScalarExpr,
    rhs: &ScalarExpr,
    schema: &Schema,
    view: &TupleView<'_>,
) -> Result<(OngoingTimePoint, OngoingTimePoint), PlanError> {
    let as_point = |expr: &ScalarExpr| -> Result<OngoingTimePoint, PlanError> {
        match eval_scalar(expr, schema, view)? {
            Scalar::Point(p) => Ok(p),
            _ => Err(PlanError::Internal(format!(
                "min/max operand {expr} is not a time point"
            ))),
        }
    };
    Ok((as_point(lhs)?, as_point(rhs)?))
}

// ---------------------------------------------------------------------------
// Plan optimization
// ---------------------------------------------------------------------------

/// Splits mixed conjunctive selection predicates so the fixed conjuncts run
/// first as a plain filter: `σ_{f ∧ o}(R)` becomes `σ_o(σ_f(R))`. Join
/// predicates are left alone; the join evaluator applies the same split per
/// pair. Semantics are unchanged.
pub fn plan_optimize(plan: &QueryPlan, catalog: &Catalog) -> Result<QueryPlan, PlanError> {
    Ok(match plan {
        QueryPlan::Scan(name) => QueryPlan::Scan(name.clone()),
        QueryPlan::Select { pred, input } => {
            let input = plan_optimize(input, catalog)?;
            let schema = output_schema(&input, catalog)?;
            check_predicate(pred, &schema)?;
            let conjuncts = flatten_and(pred);
            let mut fixed_parts = Vec::new();
            let mut ongoing_parts = Vec::new();
            for c in conjuncts {
                if predicate_is_ongoing(c, &schema)? {
                    ongoing_parts.push(c);
                } else {
                    fixed_parts.push(c);
                }
            }
            if fixed_parts.is_empty() || ongoing_parts.is_empty() {
                QueryPlan::select(pred.clone(), input)
            } else {
                let inner = QueryPlan::select(rebuild_and(&fixed_parts), input);
                QueryPlan::select(rebuild_and(&ongoing_parts), inner)
            }
        }
        QueryPlan::Project { items, input } => {
            QueryPlan::project(items.clone(), plan_optimize(input, catalog)?)
        }
        QueryPlan::Product { left, right } => QueryPlan::product(
            plan_optimize(left, catalog)?,
            plan_optimize(right, catalog)?,
        ),
        QueryPlan::Join { pred, left, right } => QueryPlan::join(
            pred.clone(),
            plan_optimize(left, catalog)?,
            plan_optimize(right, catalog)?,
        ),
        QueryPlan::Union { left, right } => QueryPlan::union(
            plan_optimize(left, catalog)?,
            plan_optimize(right, catalog)?,
        ),
        QueryPlan::Difference { left, right } => QueryPlan::difference(
            plan_optimize(left, catalog)?,
            plan_optimize(right, catalog)?,
        ),
    })
}

// ---------------------------------------------------------------------------
// Fixed-side helpers shared with the oracle
// ---------------------------------------------------------------------------

/// Resolves an interval operand on a bound tuple. Literals must have been
/// bound beforehand via [`QueryPlan::bind_scalar_literals`].
pub fn fixed_interval_operand(
    operand: &IntervalOperand,
    schema: &Schema,
    tuple: &FixedTuple,
) -> Result<FixedInterval, PlanError> {
    match operand {
        IntervalOperand::Attr(name) => {
            let idx = schema.resolve(name)?;
            match &tuple.values()[idx] {
                FixedValue::Interval(i) => Ok(*i),
                other => Err(PlanError::Internal(format!(
                    "attribute {name} expected a bound interval, found {other}"
                ))),
            }
        }
        IntervalOperand::Literal(i) if i.start().is_fixed() && i.end().is_fixed() => Ok(
            FixedInterval::new(i.start().lower(), i.end().lower()),
        ),
        IntervalOperand::Literal(i) => Err(PlanError::Internal(format!(
            "unbound interval literal {i} in fixed evaluation"
        ))),
    }
}

/// Fixed-side projection, mirroring [`eval_projection`] on bound values.
pub fn fixed_projection(
    item: &Projection,
    schema: &Schema,
    tuple: &FixedTuple,
) -> Result<FixedValue, PlanError> {
    let fixed_point = |expr: &ScalarExpr| -> Result<Tick, PlanError> {
        match expr {
            ScalarExpr::Attr(name) => {
                let idx = schema.resolve(name)?;
                match &tuple.values()[idx] {
                    FixedValue::Tick(t) => Ok(*t),
                    other => Err(PlanError::Internal(format!(
                        "attribute {name} expected a bound time point, found {other}"
                    ))),
                }
            }
            ScalarExpr::Point(p) if p.is_fixed() => Ok(p.lower()),
            other => Err(PlanError::Internal(format!(
                "operand {other} is not a bound time point"
            ))),
        }
    };
    match item {
        Projection::Attr { attr, .. } => {
            let idx = schema.resolve(attr)?;
            Ok(tuple.values()[idx].clone())
        }
        Projection::Intersect { lhs, rhs, .. } => {
            let l = fixed_interval_operand(lhs, schema, tuple)?;
            let r = fixed_interval_operand(rhs, schema, tuple)?;
            Ok(FixedValue::Interval(FixedInterval::new(
                l.start.max(r.start),
                l.end.min(r.end),
            )))
        }
        Projection::PointMin { lhs, rhs, .. } => Ok(FixedValue::Tick(
            fixed_point(lhs)?.min(fixed_point(rhs)?),
        )),
        Projection::PointMax { lhs, rhs, .. } => Ok(FixedValue::Tick(
            fixed_point(lhs)?.max(fixed_point(rhs)?),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::IntervalSet;

    fn d(t: i64) -> Tick {
        Tick::new(t)
    }

    fn bugs() -> Catalog {
        let mut rel = Relation::new(Schema::bare(&[
            ("BID", AttrType::Int),
            ("C", AttrType::Text),
            ("VT", AttrType::Interval),
        ]));
        rel.push_base(vec![
            AttributeValue::Int(500),
            AttributeValue::Text("Spam filter".into()),
            AttributeValue::Interval(OngoingInterval::new(
                OngoingTimePoint::fixed(d(125)),
                OngoingTimePoint::now(),
            )),
        ])
        .unwrap();
        let mut catalog = Catalog::new();
        catalog.insert("B", rel);
        catalog
    }

    fn overlaps_vt_literal() -> Predicate {
        Predicate::Temporal {
            op: TemporalOp::Overlaps,
            lhs: IntervalOperand::Attr(AttrName::bare("VT")),
            rhs: IntervalOperand::Literal(OngoingInterval::fixed(d(120), d(818))),
        }
    }

    #[test]
    fn predicate_lifting_of_fixed_comparisons() {
        let catalog = bugs();
        let rel = eval(&QueryPlan::Scan("B".into()), &catalog).unwrap();
        let tuple = &rel.tuples()[0];
        let spam = Predicate::Compare {
            op: CompareOp::Eq,
            lhs: ScalarExpr::Attr(AttrName::bare("C")),
            rhs: ScalarExpr::Text("Spam filter".into()),
        };
        assert_eq!(
            eval_predicate(&spam, rel.schema(), tuple).unwrap(),
            IntervalSet::full()
        );
        let calendar = Predicate::Compare {
            op: CompareOp::Eq,
            lhs: ScalarExpr::Attr(AttrName::bare("C")),
            rhs: ScalarExpr::Text("Calendar".into()),
        };
        assert_eq!(
            eval_predicate(&calendar, rel.schema(), tuple).unwrap(),
            IntervalSet::empty()
        );
        // The worked overlaps predicate restricts to [126, +inf).
        assert_eq!(
            eval_predicate(&overlaps_vt_literal(), rel.schema(), tuple).unwrap(),
            IntervalSet::after(d(126))
        );
    }

    #[test]
    fn select_restricts_reference_time() {
        // The worked selection example: the stored tuple is only valid up to
        // 816, the predicate holds from 126 on.
        let mut rel = Relation::new(Schema::bare(&[("VT", AttrType::Interval)]));
        rel.push(Tuple::new(
            vec![AttributeValue::Interval(OngoingInterval::new(
                OngoingTimePoint::fixed(d(125)),
                OngoingTimePoint::now(),
            ))],
            IntervalSet::before(d(816)),
        ))
        .unwrap();
        let mut catalog = Catalog::new();
        catalog.insert("X", rel);
        let plan = QueryPlan::select(overlaps_vt_literal(), QueryPlan::Scan("X".into()));
        let out = eval(&plan, &catalog).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out.tuples()[0].rt, IntervalSet::new([(d(126), d(816))]));
    }

    #[test]
    fn select_true_is_identity_and_empty_input_stays_empty() {
        let catalog = bugs();
        let scan = QueryPlan::Scan("B".into());
        let all = eval(&scan, &catalog).unwrap();
        let selected = eval(
            &QueryPlan::select(Predicate::Literal(true), scan.clone()),
            &catalog,
        )
        .unwrap();
        assert_eq!(all, selected);

        let mut empty_catalog = Catalog::new();
        empty_catalog.insert("E", Relation::new(Schema::bare(&[("A", AttrType::Int)])));
        let out = eval(
            &QueryPlan::select(Predicate::Literal(true), QueryPlan::Scan("E".into())),
            &empty_catalog,
        )
        .unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn projection_merges_structural_duplicates() {
        let mut rel = Relation::new(Schema::bare(&[
            ("K", AttrType::Int),
            ("N", AttrType::Int),
        ]));
        rel.push_base(vec![AttributeValue::Int(1), AttributeValue::Int(10)])
            .unwrap();
        rel.push_base(vec![AttributeValue::Int(1), AttributeValue::Int(20)])
            .unwrap();
        let mut catalog = Catalog::new();
        catalog.insert("R", rel);
        let plan = QueryPlan::project(
            vec![Projection::attr(AttrName::bare("K"))],
            QueryPlan::Scan("R".into()),
        );
        let out = eval(&plan, &catalog).unwrap();
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn type_errors_are_plan_time() {
        let catalog = bugs();
        let bad = QueryPlan::select(
            Predicate::Compare {
                op: CompareOp::Lt,
                lhs: ScalarExpr::Attr(AttrName::bare("BID")),
                rhs: ScalarExpr::Attr(AttrName::bare("VT")),
            },
            QueryPlan::Scan("B".into()),
        );
        assert!(matches!(
            output_schema(&bad, &catalog),
            Err(PlanError::TypeMismatch(_))
        ));
        let unknown = QueryPlan::Scan("Nope".into());
        assert!(matches!(
            output_schema(&unknown, &catalog),
            Err(PlanError::UnknownRelation(_))
        ));
    }

    #[test]
    fn classification_of_conjuncts() {
        let catalog = bugs();
        let schema = output_schema(&QueryPlan::Scan("B".into()), &catalog).unwrap();
        let fixed = Predicate::Compare {
            op: CompareOp::Eq,
            lhs: ScalarExpr::Attr(AttrName::bare("C")),
            rhs: ScalarExpr::Text("Spam filter".into()),
        };
        assert!(!predicate_is_ongoing(&fixed, &schema).unwrap());
        assert!(predicate_is_ongoing(&overlaps_vt_literal(), &schema).unwrap());
        // A comparison against a non-fixed point literal is ongoing even if
        // the attribute side is fixed.
        let vs_now = Predicate::Compare {
            op: CompareOp::Lt,
            lhs: ScalarExpr::Attr(AttrName::bare("BID")),
            rhs: ScalarExpr::Point(OngoingTimePoint::now()),
        };
        // (Type checking rejects int vs point; classification is independent.)
        assert!(predicate_is_ongoing(&vs_now, &schema).unwrap());
    }

    #[test]
    fn optimize_splits_mixed_selects_only() {
        let catalog = bugs();
        let mixed = Predicate::Compare {
            op: CompareOp::Eq,
            lhs: ScalarExpr::Attr(AttrName::bare("C")),
            rhs: ScalarExpr::Text("Spam filter".into()),
        }
        .and(overlaps_vt_literal());
        let plan = QueryPlan::select(mixed, QueryPlan::Scan("B".into()));
        let optimized = plan_optimize(&plan, &catalog).unwrap();
        match &optimized {
            QueryPlan::Select { input, .. } => {
                assert!(matches!(**input, QueryPlan::Select { .. }))
            }
            other => panic!("expected a split select, got {other:?}"),
        }
        assert_eq!(eval(&plan, &catalog).unwrap(), eval(&optimized, &catalog).unwrap());

        // Single-class predicates keep their shape.
        let fixed_only = QueryPlan::select(
            Predicate::Compare {
                op: CompareOp::Eq,
                lhs: ScalarExpr::Attr(AttrName::bare("C")),
                rhs: ScalarExpr::Text("Spam filter".into()),
            },
            QueryPlan::Scan("B".into()),
        );
        assert_eq!(plan_optimize(&fixed_only, &catalog).unwrap(), fixed_only);
        let ongoing_only = QueryPlan::select(overlaps_vt_literal(), QueryPlan::Scan("B".into()));
        assert_eq!(plan_optimize(&ongoing_only, &catalog).unwrap(), ongoing_only);
    }
}
