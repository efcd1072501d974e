//! JSON rendering of the decomposition, used for golden-file tests and the
//! CLI's `--explain` output. Vertex lists are always sorted and keys come out
//! in declaration order.

use serde::Serialize;

use super::{CycleContext, StarContext, XReport};

#[derive(Serialize)]
struct Dump<'a> {
    context: &'a CycleContext,
    #[serde(skip_serializing_if = "Option::is_none")]
    x_report: Option<&'a XReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    star: Option<&'a StarContext>,
}

pub fn to_json(ctx: &CycleContext, xrep: Option<&XReport>, star: Option<&StarContext>) -> String {
    let dump = Dump {
        context: ctx,
        x_report: xrep,
        star: star.filter(|s| !s.is_empty()),
    };
    serde_json::to_string_pretty(&dump).expect("decomposition dump is always serialisable")
}
