fn main() {
    println!("colax");
}
