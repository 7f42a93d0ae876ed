//! Bundled example files: diagrams, braiding matrices, shape
//! vocabularies, and a worked cipher key. They are compiled into the
//! library so the CLI can address them by name, and the same files are
//! shipped under `fixtures/` for direct inspection.

pub const FIGURE2_BD: &str = include_str!("../fixtures/figure2.bd");
pub const FIGURE4_BD: &str = include_str!("../fixtures/figure4.bd");
pub const FIGURE4_RIGHT_BD: &str = include_str!("../fixtures/figure4-right.bd");
pub const FIGURE5_BD: &str = include_str!("../fixtures/figure5.bd");
pub const FIGURE6_BD: &str = include_str!("../fixtures/figure6.bd");
pub const MERGE3_BD: &str = include_str!("../fixtures/merge3.bd");

pub const COCA_QM: &str = include_str!("../fixtures/coca.qm");
pub const COCA_SIZE_QM: &str = include_str!("../fixtures/coca-size.qm");
pub const CAR_QM: &str = include_str!("../fixtures/car.qm");
pub const SHIP_QM: &str = include_str!("../fixtures/ship.qm");

pub const COCA_VOCAB: &str = include_str!("../fixtures/coca.vocab");
pub const CAR_VOCAB: &str = include_str!("../fixtures/car.vocab");
pub const CAR_RIGHT_VOCAB: &str = include_str!("../fixtures/car-right.vocab");
pub const SHIP_VOCAB: &str = include_str!("../fixtures/ship.vocab");
pub const DEMO_VOCAB: &str = include_str!("../fixtures/demo.vocab");

pub const DEMO_KEY: &str = include_str!("../fixtures/demo.key");
pub const DEMO_CT: &str = include_str!("../fixtures/demo.ct");

pub fn diagram_text(name: &str) -> Option<&'static str> {
    match name {
        "figure2" => Some(FIGURE2_BD),
        "figure4" => Some(FIGURE4_BD),
        "figure4-right" => Some(FIGURE4_RIGHT_BD),
        "figure5" => Some(FIGURE5_BD),
        "figure6" => Some(FIGURE6_BD),
        "merge3" => Some(MERGE3_BD),
        _ => None,
    }
}

pub fn qmatrix_text(name: &str) -> Option<&'static str> {
    match name {
        "coca" => Some(COCA_QM),
        "coca-size" => Some(COCA_SIZE_QM),
        "car" => Some(CAR_QM),
        "ship" => Some(SHIP_QM),
        _ => None,
    }
}

pub fn vocab_text(name: &str) -> Option<&'static str> {
    match name {
        "coca" => Some(COCA_VOCAB),
        "car" => Some(CAR_VOCAB),
        "car-right" => Some(CAR_RIGHT_VOCAB),
        "ship" => Some(SHIP_VOCAB),
        "demo" => Some(DEMO_VOCAB),
        _ => None,
    }
}

pub fn key_text(name: &str) -> Option<&'static str> {
    match name {
        "demo" => Some(DEMO_KEY),
        _ => None,
    }
}

pub fn cryptogram_text(name: &str) -> Option<&'static str> {
    match name {
        "demo" => Some(DEMO_CT),
        _ => None,
    }
}

pub const DIAGRAM_NAMES: &[&str] = &["figure2", "figure4", "figure4-right", "figure5", "figure6", "merge3"];
pub const QMATRIX_NAMES: &[&str] = &["coca", "coca-size", "car", "ship"];
pub const VOCAB_NAMES: &[&str] = &["coca", "car", "car-right", "ship", "demo"];
