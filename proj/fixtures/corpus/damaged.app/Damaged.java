package damaged;

import java.net.URL;
import java.net.URLConnection;

/* JADX WARNING: Removed duplicated region for block B:12 */
class Damaged {
    void broken() {
        int x = ;
        @@ %% !!
    }

    void alive() throws Exception {
        URL u = new URL("http://damaged.example/api/alive");
        URLConnection c = u.openConnection();
    }
}
