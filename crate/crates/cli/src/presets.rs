//! Built-in configs for the two worked examples.

pub const CAKE: &str = include_str!("../presets/cake.json");
pub const FISHERMEN: &str = include_str!("../presets/fishermen.json");

pub const NAMES: [&str; 2] = ["cake", "fishermen"];

pub fn preset(name: &str) -> Option<&'static str> {
    match name {
        "cake" => Some(CAKE),
        "fishermen" => Some(FISHERMEN),
        _ => None,
    }
}
