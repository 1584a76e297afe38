//! Definitions bundled with the library.

/// `(relative path, source)`.
pub const STDLIB: &[(&str, &str)] = &[
    ("sync.treo", include_str!("../../stdlib/sync.treo")),
    ("syncdrain.treo", include_str!("../../stdlib/syncdrain.treo")),
    ("fifo1.treo", include_str!("../../stdlib/fifo1.treo")),
    ("fifo1full.treo", include_str!("../../stdlib/fifo1full.treo")),
    ("lossysync.treo", include_str!("../../stdlib/lossysync.treo")),
    ("syncspout.treo", include_str!("../../stdlib/syncspout.treo")),
];

pub fn lookup(path: &str) -> Option<&'static str> {
    STDLIB.iter().find(|(p, _)| *p == path).map(|(_, s)| *s)
}
