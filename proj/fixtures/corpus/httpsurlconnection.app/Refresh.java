package secureconn;

import java.net.URL;
import javax.net.ssl.HttpsURLConnection;

class Refresh {
    void refresh() throws Exception {
        URL u = new URL("https://secure.example/v1/session/refresh");
        HttpsURLConnection c = (HttpsURLConnection) u.openConnection();
        c.setRequestMethod("POST");
    }
}
