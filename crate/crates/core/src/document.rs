//! JSON exchange format for event networks.
//!
//! ```json
//! {"events":[{"id":1,"origin":"source"}, {"id":2,"origin":"bipartite","part":1}],
//!  "arcs":[{"label":"A","tail":1,"head":2,"kind":"real","duration":2}],
//!  "stats":{...}, "cpm":{...}}
//! ```
//!
//! Events are sorted by id and arcs by label; `stats` and `cpm` are present
//! only when requested. All numbers are integers.

use serde::{Deserialize, Serialize};

use crate::aoa::{AoaArc, AoaDag, AoaEvent, NetworkStats};
use crate::cpm::CpmResult;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AoaDocument {
    pub events: Vec<AoaEvent>,
    pub arcs: Vec<AoaArc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<NetworkStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cpm: Option<CpmResult>,
}

impl AoaDocument {
    pub fn new(aoa: &AoaDag) -> Self {
        let mut events = aoa.events.clone();
        events.sort_by_key(|e| e.id);
        let mut arcs = aoa.arcs.clone();
        arcs.sort_by(|a, b| a.label.cmp(&b.label));
        AoaDocument { events, arcs, stats: None, cpm: None }
    }

    pub fn with_stats(mut self, stats: NetworkStats) -> Self {
        self.stats = Some(stats);
        self
    }

    pub fn with_cpm(mut self, cpm: CpmResult) -> Self {
        self.cpm = Some(cpm);
        self
    }

    pub fn network(&self) -> AoaDag {
        AoaDag { events: self.events.clone(), arcs: self.arcs.clone() }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
