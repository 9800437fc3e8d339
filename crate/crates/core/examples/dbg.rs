fn main() {
    let g = colax_core::groupement::build_px(&["a", "b"], 2);
    println!("{}", g.validate_simple_lr().to_text());
}
