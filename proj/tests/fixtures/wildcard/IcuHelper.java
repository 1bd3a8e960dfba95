import android.icu.lang.*;

public class IcuHelper {
    void m() {
        UCharacter.foo();
    }
}
