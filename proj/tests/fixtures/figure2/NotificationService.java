import android.accessibilityservice.AccessibilityService;

public class NotificationService extends AccessibilityService {
}
