import android.accessibilityservice.AccessibilityService;
import android.security.KeyChain;

public class GuardedNotificationService extends AccessibilityService {
    void bindKeys() {
        KeyChain.createInstallIntent();
    }
}
