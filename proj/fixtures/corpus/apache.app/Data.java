package apache;

import org.apache.http.client.HttpClient;
import org.apache.http.client.methods.HttpGet;
import org.apache.http.client.methods.HttpPost;

class Data {
    void list(HttpClient client) throws Exception {
        HttpGet get = new HttpGet("http://apache.example/api/list");
        client.execute(get);
    }

    void update(HttpClient client) throws Exception {
        HttpPost post = new HttpPost("http://apache.example/api/update");
        client.execute(post);
    }

    void ping(HttpClient client) throws Exception {
        HttpGet get = new HttpGet("http://shared.example/ping");
        client.execute(get);
    }
}
