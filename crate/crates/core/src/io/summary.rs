//! JSON summaries of experiment runs.

use serde_json::{json, Map, Value};

use crate::star::{difference_interval, wilson_interval, Calibration, FrequencyTable, RATIO_BIN, Z90};

pub fn frequency_json(table: &FrequencyTable) -> Value {
    let mut events = Map::new();
    for (name, count) in table.counts() {
        let (lo, hi) = wilson_interval(count, table.trials, Z90);
        events.insert(
            name.into(),
            json!({ "count": count, "frequency": table.frequency(count), "ci90": [lo, hi] }),
        );
    }
    let histogram: Vec<Value> = table
        .ratio_histogram
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let lo = 1.0 + i as f64 * RATIO_BIN;
            let hi = if i + 1 == table.ratio_histogram.len() { Value::Null } else { json!(lo + RATIO_BIN) };
            json!({ "lo": lo, "hi": hi, "count": c })
        })
        .collect();
    json!({ "trials": table.trials, "events": events, "ratio_histogram": histogram })
}

pub fn calibration_json(cal: &Calibration) -> Value {
    let mut m = Map::new();
    m.insert("trials".into(), json!(cal.trials));
    m.insert("seed".into(), json!(cal.seed));
    for (k, v) in cal.values() {
        m.insert(k.into(), json!(v));
    }
    Value::Object(m)
}

/// Success frequency at the tilted amplitudes against the untilted
/// baseline, with Newcombe's 90% interval for the difference.
pub fn comparison_json(tilted: &FrequencyTable, baseline: &FrequencyTable) -> Value {
    let (lo, hi) = difference_interval(tilted.success, tilted.trials, baseline.success, baseline.trials, Z90);
    json!({
        "tilted_success": tilted.frequency(tilted.success),
        "baseline_success": baseline.frequency(baseline.success),
        "difference_ci90": [lo, hi],
        "recalibrate": lo < 0.0,
    })
}
