//! Parameter sets shipped with the crate (two-site ethylene through
//! six-site hexatriene), embedded at compile time.

use crate::model::{load_model_params, ModelParameters};

pub const ETHYLENE: &str = include_str!("../models/ethylene.model");
pub const BUTADIENE: &str = include_str!("../models/butadiene.model");
pub const HEXATRIENE_4E4O: &str = include_str!("../models/hexatriene_4e4o.model");
pub const HEXATRIENE_6E6O: &str = include_str!("../models/hexatriene_6e6o.model");

/// `(name, file contents)` for every shipped model.
pub const ALL: [(&str, &str); 4] = [
    ("ethylene", ETHYLENE),
    ("butadiene", BUTADIENE),
    ("hexatriene-4e4o", HEXATRIENE_4E4O),
    ("hexatriene-6e6o", HEXATRIENE_6E6O),
];

fn parse(text: &str) -> ModelParameters {
    load_model_params(text).expect("shipped fixture parses")
}

pub fn ethylene() -> ModelParameters {
    parse(ETHYLENE)
}

pub fn butadiene() -> ModelParameters {
    parse(BUTADIENE)
}

pub fn hexatriene_4e4o() -> ModelParameters {
    parse(HEXATRIENE_4E4O)
}

pub fn hexatriene_6e6o() -> ModelParameters {
    parse(HEXATRIENE_6E6O)
}

pub fn all() -> Vec<ModelParameters> {
    ALL.iter().map(|(_, t)| parse(t)).collect()
}

pub fn by_name(name: &str) -> Option<ModelParameters> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| parse(t))
}
