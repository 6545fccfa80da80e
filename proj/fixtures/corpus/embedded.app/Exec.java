package embed;

import java.net.URL;
import java.net.URLConnection;
import org.json.JSONObject;

class Exec {
    void exec() throws Exception {
        String sql = "SELECT * FROM weather";
        URL u = new URL("http://embed.example/exec?stmt=" + sql);
    }

    void plain() throws Exception {
        URL u = new URL("http://embed.example/plain");
    }

    void ui() throws Exception {
        JSONObject o = new JSONObject();
        o.put("ui", "<html><body>");
    }
}
