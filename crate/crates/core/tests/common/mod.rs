//! Seeded random instances for the differential tests: small relations over
//! ticks 0..=12 (plus sentinels inside ongoing values), one fixed and one
//! or two ongoing attributes, and one plan per algebra operator.

use ongoing::algebra::{
    CompareOp, IntervalOperand, Predicate, Projection, QueryPlan, ScalarExpr, TemporalOp,
};
use ongoing::relation::AttrName;
use ongoing::{
    AttrType, AttributeValue, Catalog, IntervalSet, OngoingInterval, OngoingTimePoint, Relation,
    Schema, Tick, Tuple,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub const MAX_TICK: i64 = 12;

pub struct Instance {
    pub catalog: Catalog,
    /// One plan per operator: project, select, product, join, union,
    /// difference.
    pub plans: Vec<QueryPlan>,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn tick(rng: &mut ChaCha8Rng) -> Tick {
    Tick::new(rng.gen_range(0..=MAX_TICK))
}

fn point(rng: &mut ChaCha8Rng) -> OngoingTimePoint {
    match rng.gen_range(0..5) {
        0 => OngoingTimePoint::now(),
        1 => OngoingTimePoint::fixed(tick(rng)),
        2 => OngoingTimePoint::growing(tick(rng)),
        3 => OngoingTimePoint::limited(tick(rng)),
        _ => {
            let a = tick(rng);
            let b = tick(rng);
            OngoingTimePoint::new(a.min(b), a.max(b)).expect("ordered anchors")
        }
    }
}

pub fn interval(rng: &mut ChaCha8Rng) -> OngoingInterval {
    OngoingInterval::new(point(rng), point(rng))
}

fn reference_time(rng: &mut ChaCha8Rng) -> IntervalSet {
    if rng.gen_bool(0.6) {
        return IntervalSet::full();
    }
    let mut spans = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let s = rng.gen_range(-1..=MAX_TICK);
        let e = rng.gen_range(s + 1..=MAX_TICK + 2);
        spans.push((Tick::new(s), Tick::new(e)));
    }
    if rng.gen_bool(0.3) {
        spans.push((Tick::NEG_INF, Tick::new(rng.gen_range(-1..=2))));
    }
    let set = IntervalSet::new(spans);
    if set.is_empty() {
        IntervalSet::full()
    } else {
        set
    }
}

fn value(rng: &mut ChaCha8Rng, ty: AttrType) -> AttributeValue {
    match ty {
        AttrType::Int => AttributeValue::Int(rng.gen_range(0..4)),
        AttrType::Text => {
            AttributeValue::Text(["red", "green", "blue"][rng.gen_range(0..3)].to_string())
        }
        AttrType::Tick => AttributeValue::Tick(tick(rng)),
        AttrType::Point => AttributeValue::Point(point(rng)),
        AttrType::Interval => AttributeValue::Interval(interval(rng)),
    }
}

fn schema(rng: &mut ChaCha8Rng) -> Schema {
    let mut attrs = vec![("k", AttrType::Int)];
    attrs.push(("vt", AttrType::Interval));
    match rng.gen_range(0..3) {
        0 => attrs.push(("p", AttrType::Point)),
        1 => attrs.push(("vu", AttrType::Interval)),
        _ => {}
    }
    Schema::bare(&attrs)
}

fn relation(rng: &mut ChaCha8Rng, schema: &Schema) -> Relation {
    let mut rel = Relation::new(schema.clone());
    for _ in 0..rng.gen_range(0..=8) {
        let values = schema.attrs().iter().map(|(_, ty)| value(rng, *ty)).collect();
        rel.push(Tuple::new(values, reference_time(rng)))
            .expect("generated tuple conforms");
    }
    rel
}

fn temporal_leaf(rng: &mut ChaCha8Rng, interval_attrs: &[AttrName]) -> Predicate {
    let ops = [
        TemporalOp::Before,
        TemporalOp::Overlaps,
        TemporalOp::Meets,
        TemporalOp::Starts,
        TemporalOp::During,
        TemporalOp::Finishes,
        TemporalOp::Equals,
    ];
    let op = ops[rng.gen_range(0..ops.len())];
    let lhs = IntervalOperand::Attr(interval_attrs[rng.gen_range(0..interval_attrs.len())].clone());
    let rhs = if interval_attrs.len() > 1 && rng.gen_bool(0.4) {
        IntervalOperand::Attr(interval_attrs[rng.gen_range(0..interval_attrs.len())].clone())
    } else {
        IntervalOperand::Literal(interval(rng))
    };
    Predicate::Temporal { op, lhs, rhs }
}

fn leaf(rng: &mut ChaCha8Rng, schema: &Schema, qualifier: Option<&str>) -> Predicate {
    let name = |n: &str| match qualifier {
        Some(q) => AttrName::qualified(q, n),
        None => AttrName::bare(n),
    };
    let interval_attrs: Vec<AttrName> = schema
        .attrs()
        .iter()
        .filter(|(_, ty)| *ty == AttrType::Interval)
        .map(|(n, _)| name(&n.name))
        .collect();
    let has_point = schema.attrs().iter().any(|(_, ty)| *ty == AttrType::Point);
    match rng.gen_range(0..4) {
        0 => Predicate::Compare {
            op: if rng.gen_bool(0.5) {
                CompareOp::Eq
            } else {
                CompareOp::Ne
            },
            lhs: ScalarExpr::Attr(name("k")),
            rhs: ScalarExpr::Int(rng.gen_range(0..4)),
        },
        1 if has_point => {
            let ops = [
                CompareOp::Lt,
                CompareOp::Le,
                CompareOp::Gt,
                CompareOp::Ge,
                CompareOp::Eq,
                CompareOp::Ne,
            ];
            Predicate::Compare {
                op: ops[rng.gen_range(0..ops.len())],
                lhs: ScalarExpr::Attr(name("p")),
                rhs: ScalarExpr::Point(point(rng)),
            }
        }
        _ => temporal_leaf(rng, &interval_attrs),
    }
}

/// A predicate of depth at most two over the given schema.
pub fn predicate(rng: &mut ChaCha8Rng, schema: &Schema, qualifier: Option<&str>) -> Predicate {
    let base = leaf(rng, schema, qualifier);
    match rng.gen_range(0..4) {
        0 => base,
        1 => base.and(leaf(rng, schema, qualifier)),
        2 => base.or(leaf(rng, schema, qualifier)),
        _ => base.negate(),
    }
}

fn join_predicate(rng: &mut ChaCha8Rng) -> Predicate {
    let key_match = Predicate::Compare {
        op: CompareOp::Eq,
        lhs: ScalarExpr::Attr(AttrName::qualified("R", "k")),
        rhs: ScalarExpr::Attr(AttrName::qualified("S", "k")),
    };
    let ops = [
        TemporalOp::Before,
        TemporalOp::Overlaps,
        TemporalOp::Meets,
        TemporalOp::During,
    ];
    let temporal = Predicate::Temporal {
        op: ops[rng.gen_range(0..ops.len())],
        lhs: IntervalOperand::Attr(AttrName::qualified("R", "vt")),
        rhs: IntervalOperand::Attr(AttrName::qualified("S", "vt")),
    };
    if rng.gen_bool(0.7) {
        key_match.and(temporal)
    } else {
        temporal
    }
}

fn projection_items(rng: &mut ChaCha8Rng, schema: &Schema) -> Vec<Projection> {
    let mut items: Vec<Projection> = Vec::new();
    for (name, _) in schema.attrs() {
        if rng.gen_bool(0.7) {
            items.push(Projection::attr(AttrName::bare(name.name.clone())));
        }
    }
    if items.is_empty() {
        items.push(Projection::attr(AttrName::bare(
            schema.attrs()[0].0.name.clone(),
        )));
    }
    if rng.gen_bool(0.4) {
        items.push(Projection::Intersect {
            lhs: IntervalOperand::Attr(AttrName::bare("vt")),
            rhs: IntervalOperand::Literal(interval(rng)),
            alias: Some("common".into()),
        });
    }
    if rng.gen_bool(0.25) {
        items.push(Projection::PointMin {
            lhs: ScalarExpr::Point(point(rng)),
            rhs: ScalarExpr::Point(point(rng)),
            alias: Some("low".into()),
        });
    }
    items
}

/// Builds a random instance: two same-schema relations `R` and `S` and one
/// plan per operator.
pub fn instance(seed: u64) -> Instance {
    let mut rng = rng(seed);
    let schema = schema(&mut rng);
    let mut catalog = Catalog::new();
    catalog.insert("R", relation(&mut rng, &schema));
    catalog.insert("S", relation(&mut rng, &schema));

    let scan_r = QueryPlan::Scan("R".into());
    let scan_s = QueryPlan::Scan("S".into());
    let plans = vec![
        QueryPlan::project(projection_items(&mut rng, &schema), scan_r.clone()),
        QueryPlan::select(predicate(&mut rng, &schema, None), scan_r.clone()),
        QueryPlan::product(scan_r.clone(), scan_s.clone()),
        QueryPlan::join(join_predicate(&mut rng), scan_r.clone(), scan_s.clone()),
        QueryPlan::union(scan_r.clone(), scan_s.clone()),
        QueryPlan::difference(scan_r, scan_s),
    ];
    Instance { catalog, plans }
}

/// Random canonical interval set over small ticks, for the sweep tests.
/// (Used by the acceptance target; each test binary compiles this module
/// independently.)
#[allow(dead_code)]
pub fn canonical_set(rng: &mut ChaCha8Rng) -> IntervalSet {
    let mut spans: Vec<(Tick, Tick)> = Vec::new();
    for _ in 0..rng.gen_range(0..5) {
        let s = rng.gen_range(-30i64..30);
        let e = s + rng.gen_range(1i64..8);
        spans.push((Tick::new(s), Tick::new(e)));
    }
    if rng.gen_bool(0.25) {
        spans.push((Tick::NEG_INF, Tick::new(rng.gen_range(-40i64..-30))));
    }
    if rng.gen_bool(0.25) {
        spans.push((Tick::new(rng.gen_range(30i64..40)), Tick::POS_INF));
    }
    IntervalSet::new(spans)
}
