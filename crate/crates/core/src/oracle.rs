//! Differential checking against a bind-then-evaluate reference evaluator.
//!
//! The engine claims `∀rt: bind(Q(D), rt) ≡ Q_fixed(bind(D, rt))`. Binding
//! is piecewise constant between the finite ticks stored anywhere in the
//! inputs, so predicate truth can only change at those ticks: checking every
//! breakpoint (each stored tick, its two neighbours, plus one sample beyond
//! each side) is exhaustive for the universally quantified claim.
//!
//! [`fixed_eval`] is the reference side: textbook set semantics on
//! already-bound relations, with the temporal predicate truth table from
//! [`crate::fixed`] — independent of the ongoing implementations.

use std::collections::BTreeSet;

use crate::algebra::{
    self, eval, CompareOp, PlanError, Predicate, QueryPlan, ScalarExpr, TemporalOp,
};
use crate::relation::{
    Catalog, FixedCatalog, FixedRelation, FixedTuple, FixedValue, Relation, Schema,
};
use crate::tick::Tick;

/// Builds the breakpoint set for a collection of finite tick coordinates.
///
/// For every stored tick `t` the result contains `t-1`, `t`, `t+1`, plus
/// one tick below and one above everything. With no finite ticks at all,
/// two arbitrary samples suffice (every binding is constant in `rt`).
pub fn breakpoints_of(finite_ticks: impl IntoIterator<Item = i64>) -> Vec<Tick> {
    let stored: BTreeSet<i64> = finite_ticks.into_iter().collect();
    let mut out = BTreeSet::new();
    match (stored.first(), stored.last()) {
        (Some(&lo), Some(&hi)) => {
            for &t in &stored {
                out.insert(t.saturating_sub(1).max(i64::MIN + 1));
                out.insert(t);
                out.insert(t.saturating_add(1).min(i64::MAX - 1));
            }
            out.insert(lo.saturating_sub(2).max(i64::MIN + 1));
            out.insert(hi.saturating_add(2).min(i64::MAX - 1));
        }
        _ => {
            out.insert(0);
            out.insert(1);
        }
    }
    out.into_iter().map(Tick::new).collect()
}

/// Breakpoints covering everything a query touches: every finite tick in
/// the scanned relations and every finite tick in plan literals.
pub fn breakpoints(plan: &QueryPlan, catalog: &Catalog) -> Vec<Tick> {
    let mut ticks = Vec::new();
    for name in plan.scanned_relations() {
        if let Some(rel) = catalog.get(&name) {
            rel.collect_finite_ticks(&mut ticks);
        }
    }
    plan.collect_finite_ticks(&mut ticks);
    breakpoints_of(ticks)
}

/// Binds every relation of a catalog at `rt`. Schemas get their scan
/// qualifier stamped on, matching what the ongoing `Scan` produces.
pub fn bind_catalog(catalog: &Catalog, rt: Tick) -> FixedCatalog {
    let mut out = FixedCatalog::new();
    for (name, rel) in catalog.iter() {
        let bound = rel.bind(rt);
        let mut qualified = FixedRelation::new(rel.schema().qualify(name));
        for tuple in bound.tuples() {
            qualified.insert(tuple.clone());
        }
        out.insert(name.clone(), qualified);
    }
    out
}

/// Evaluates a plan on bound (fixed) relations with textbook set semantics.
///
/// Point and interval literals in the plan must already be bound (see
/// [`QueryPlan::bind_scalar_literals`]); relation names resolve against the
/// bound catalog, whose schemas carry the scan qualifiers already.
pub fn fixed_eval(plan: &QueryPlan, catalog: &FixedCatalog) -> Result<FixedRelation, PlanError> {
    match plan {
        QueryPlan::Scan(name) => catalog
            .get(name)
            .cloned()
            .ok_or_else(|| PlanError::UnknownRelation(name.clone())),
        QueryPlan::Select { pred, input } => {
            let rel = fixed_eval(input, catalog)?;
            let mut out = FixedRelation::new(rel.schema().clone());
            for tuple in rel.tuples() {
                if fixed_pred(pred, rel.schema(), tuple)? {
                    out.insert(tuple.clone());
                }
            }
            Ok(out)
        }
        QueryPlan::Project { items, input } => {
            let rel = fixed_eval(input, catalog)?;
            let schema = algebra::project_schema(items, rel.schema())?;
            let mut out = FixedRelation::new(schema);
            for tuple in rel.tuples() {
                let values = items
                    .iter()
                    .map(|item| algebra::fixed_projection(item, rel.schema(), tuple))
                    .collect::<Result<Vec<_>, _>>()?;
                out.insert(FixedTuple::new(values));
            }
            Ok(out)
        }
        QueryPlan::Product { left, right } => {
            let l = fixed_eval(left, catalog)?;
            let r = fixed_eval(right, catalog)?;
            let schema = l.schema().product(r.schema())?;
            let mut out = FixedRelation::new(schema);
            for lt in l.tuples() {
                for rt in r.tuples() {
                    out.insert(lt.concat(rt));
                }
            }
            Ok(out)
        }
        QueryPlan::Join { pred, left, right } => {
            let l = fixed_eval(left, catalog)?;
            let r = fixed_eval(right, catalog)?;
            let schema = l.schema().product(r.schema())?;
            let mut out = FixedRelation::new(schema.clone());
            for lt in l.tuples() {
                for rt in r.tuples() {
                    let pair = lt.concat(rt);
                    if fixed_pred(pred, &schema, &pair)? {
                        out.insert(pair);
                    }
                }
            }
            Ok(out)
        }
        QueryPlan::Union { left, right } => {
            let l = fixed_eval(left, catalog)?;
            let r = fixed_eval(right, catalog)?;
            let schema = l.schema().union_compatible(r.schema())?;
            let mut out = FixedRelation::new(schema);
            for t in l.tuples().iter().chain(r.tuples()) {
                out.insert(t.clone());
            }
            Ok(out)
        }
        QueryPlan::Difference { left, right } => {
            let l = fixed_eval(left, catalog)?;
            let r = fixed_eval(right, catalog)?;
            let schema = l.schema().union_compatible(r.schema())?;
            let mut out = FixedRelation::new(schema);
            for t in l.tuples() {
                if !r.contains(t) {
                    out.insert(t.clone());
                }
            }
            Ok(out)
        }
    }
}

fn fixed_operand(
    expr: &ScalarExpr,
    schema: &Schema,
    tuple: &FixedTuple,
) -> Result<FixedValue, PlanError> {
    match expr {
        ScalarExpr::Attr(name) => {
            let idx = schema.resolve(name)?;
            Ok(tuple.values()[idx].clone())
        }
        ScalarExpr::Int(v) => Ok(FixedValue::Int(*v)),
        ScalarExpr::Text(v) => Ok(FixedValue::Text(v.clone())),
        ScalarExpr::Point(p) if p.is_fixed() => Ok(FixedValue::Tick(p.lower())),
        ScalarExpr::Point(p) => Err(PlanError::Internal(format!(
            "unbound point literal {p} in fixed evaluation"
        ))),
    }
}

/// Fixed-side predicate evaluation: plain booleans, no reference times.
fn fixed_pred(pred: &Predicate, schema: &Schema, tuple: &FixedTuple) -> Result<bool, PlanError> {
    match pred {
        Predicate::Literal(v) => Ok(*v),
        Predicate::And(a, b) => Ok(fixed_pred(a, schema, tuple)? && fixed_pred(b, schema, tuple)?),
        Predicate::Or(a, b) => Ok(fixed_pred(a, schema, tuple)? || fixed_pred(b, schema, tuple)?),
        Predicate::Not(a) => Ok(!fixed_pred(a, schema, tuple)?),
        Predicate::Compare { op, lhs, rhs } => {
            let l = fixed_operand(lhs, schema, tuple)?;
            let r = fixed_operand(rhs, schema, tuple)?;
            let ord = l.compare(&r).ok_or_else(|| {
                PlanError::Internal(format!("incomparable bound values {l} and {r}"))
            })?;
            Ok(match op {
                CompareOp::Lt => ord.is_lt(),
                CompareOp::Le => ord.is_le(),
                CompareOp::Gt => ord.is_gt(),
                CompareOp::Ge => ord.is_ge(),
                CompareOp::Eq => ord.is_eq(),
                CompareOp::Ne => !ord.is_eq(),
            })
        }
        Predicate::Temporal { op, lhs, rhs } => {
            let l = algebra::fixed_interval_operand(lhs, schema, tuple)?;
            let r = algebra::fixed_interval_operand(rhs, schema, tuple)?;
            Ok(match op {
                TemporalOp::Overlaps => crate::fixed::overlaps(l, r),
                TemporalOp::Before => crate::fixed::before(l, r),
                TemporalOp::Meets => crate::fixed::meets(l, r),
                TemporalOp::Starts => crate::fixed::starts(l, r),
                TemporalOp::During => crate::fixed::during(l, r),
                TemporalOp::Finishes => crate::fixed::finishes(l, r),
                TemporalOp::Equals => crate::fixed::equals(l, r),
            })
        }
    }
}

/// Which side of the differential check a counterexample tuple came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Produced by binding the ongoing result, missing from the reference.
    OngoingOnly,
    /// Produced by the reference evaluator, missing from the bound ongoing
    /// result.
    FixedOnly,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::OngoingOnly => "ongoing-only",
            Side::FixedOnly => "fixed-only",
        })
    }
}

/// Outcome of a differential check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    /// Equivalence held at every breakpoint.
    Pass { reference_times: usize },
    /// First reference time at which the two sides disagreed.
    Counterexample { rt: Tick, side: Side, tuple: String },
}

impl CheckOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, CheckOutcome::Pass { .. })
    }
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckOutcome::Pass { reference_times } => {
                write!(f, "PASS ({reference_times} reference times checked)")
            }
            CheckOutcome::Counterexample { rt, side, tuple } => {
                write!(f, "COUNTEREXAMPLE (rt={rt}, {side}, {tuple})")
            }
        }
    }
}

/// Runs the full differential check: evaluates the plan on the ongoing
/// engine, then compares its binding against bind-then-evaluate at every
/// breakpoint of the inputs and plan literals.
pub fn differential_check(plan: &QueryPlan, catalog: &Catalog) -> Result<CheckOutcome, PlanError> {
    let result = eval(plan, catalog)?;
    check_result(plan, catalog, &result)
}

/// Compares a precomputed ongoing result against the reference evaluator.
///
/// Split out from [`differential_check`] so tests can feed deliberately
/// corrupted results and confirm the checker reports them.
pub fn check_result(
    plan: &QueryPlan,
    catalog: &Catalog,
    result: &Relation,
) -> Result<CheckOutcome, PlanError> {
    let rts = breakpoints(plan, catalog);
    let mut checked = 0;
    for &rt in &rts {
        let lhs = result.bind(rt);
        let bound = bind_catalog(catalog, rt);
        let plan_bound = plan.bind_scalar_literals(rt);
        let rhs = fixed_eval(&plan_bound, &bound)?;
        if let Some(t) = lhs.tuples().difference(rhs.tuples()).next() {
            return Ok(CheckOutcome::Counterexample {
                rt,
                side: Side::OngoingOnly,
                tuple: t.to_string(),
            });
        }
        if let Some(t) = rhs.tuples().difference(lhs.tuples()).next() {
            return Ok(CheckOutcome::Counterexample {
                rt,
                side: Side::FixedOnly,
                tuple: t.to_string(),
            });
        }
        checked += 1;
    }
    Ok(CheckOutcome::Pass {
        reference_times: checked,
    })
}
