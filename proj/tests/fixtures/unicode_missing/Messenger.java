public class Messenger {
    void send(String text) {
    }
}
