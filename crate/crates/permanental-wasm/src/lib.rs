use wasm_bindgen::prelude::*;

#[wasm_bindgen]
pub fn demo_placeholder() -> u32 { permanental::placeholder() }
