import android.icu.lang.UCharacter;

public class Messenger {
    void send(String text) {
        UCharacter.getName(0);
    }
}
